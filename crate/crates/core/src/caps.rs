use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Size limits enforced before any exhaustive work starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub points: usize,
    pub walls: usize,
    pub vertices: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            points: 1024,
            walls: 512,
            vertices: 1 << 20,
        }
    }
}

impl Caps {
    pub fn unbounded() -> Self {
        Self {
            points: usize::MAX,
            walls: usize::MAX,
            vertices: usize::MAX,
        }
    }

    pub fn check_ground(&self, points: usize, walls: usize) -> Result<()> {
        if points > self.points {
            return Err(Error::cap("points", self.points));
        }
        if walls > self.walls {
            return Err(Error::cap("walls", self.walls));
        }
        Ok(())
    }
}
