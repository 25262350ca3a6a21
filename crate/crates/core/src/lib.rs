//! Exact classification of almost abelian Lie algebras g_A = R e0 ⋉_A R^(2n−1)
//! by the existence of complex and symplectic structures.

pub mod error;
pub mod exact;
pub mod jordan;
pub mod cli;
pub mod decide;
pub mod tuples;
pub mod witness;

pub use error::{Error, Result};

use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Structure {
    Complex,
    Symplectic,
}

impl Structure {
    pub const ALL: [Structure; 2] = [Structure::Complex, Structure::Symplectic];

    pub fn name(self) -> &'static str {
        match self {
            Structure::Complex => "complex",
            Structure::Symplectic => "symplectic",
        }
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Structure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "complex" | "c" => Ok(Structure::Complex),
            "symplectic" | "s" => Ok(Structure::Symplectic),
            other => Err(Error::Parse(format!("unknown structure {other:?}"))),
        }
    }
}
