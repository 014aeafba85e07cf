use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute comparison threshold shared by every certifier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    absolute: f64,
}

impl Tolerance {
    pub const DEFAULT: Tolerance = Tolerance { absolute: 1e-9 };

    pub fn new(absolute: f64) -> Result<Self> {
        if absolute > 0.0 && absolute < 1e-2 {
            Ok(Tolerance { absolute })
        } else {
            Err(Error::Tolerance(absolute))
        }
    }

    #[inline]
    pub fn absolute(&self) -> f64 {
        self.absolute
    }

    #[inline]
    pub fn within(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.absolute
    }

    /// Same threshold scaled by `factor`, unchecked against the upper limit.
    pub(crate) fn scaled(&self, factor: f64) -> Tolerance {
        Tolerance {
            absolute: self.absolute * factor,
        }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::DEFAULT
    }
}
