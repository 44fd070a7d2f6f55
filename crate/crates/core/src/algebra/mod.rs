//! The four normed division algebras and their arithmetic.

mod element;
pub mod laws;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use element::Element;
pub use laws::{check_composition_laws, LawReport};

/// One of ℝ, ℂ, ℍ, 𝕆.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algebra {
    R,
    C,
    H,
    O,
}

impl Algebra {
    pub const ALL: [Algebra; 4] = [Algebra::R, Algebra::C, Algebra::H, Algebra::O];

    /// Number of Cayley–Dickson doublings from ℝ.
    pub fn level(self) -> u32 {
        match self {
            Algebra::R => 0,
            Algebra::C => 1,
            Algebra::H => 2,
            Algebra::O => 3,
        }
    }

    pub fn dim(self) -> usize {
        1 << self.level()
    }

    pub fn is_associative(self) -> bool {
        self != Algebra::O
    }

    pub fn is_commutative(self) -> bool {
        matches!(self, Algebra::R | Algebra::C)
    }

    pub fn from_dim(dim: usize) -> Option<Algebra> {
        Algebra::ALL.into_iter().find(|a| a.dim() == dim)
    }

    /// The multiplication table, built once per process.
    pub fn table(self) -> &'static StructureConstants {
        static TABLES: OnceLock<[StructureConstants; 4]> = OnceLock::new();
        let tables = TABLES.get_or_init(|| Algebra::ALL.map(StructureConstants::build));
        &tables[self.level() as usize]
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Algebra::R => "R",
            Algebra::C => "C",
            Algebra::H => "H",
            Algebra::O => "O",
        };
        f.write_str(s)
    }
}

impl FromStr for Algebra {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "R" | "r" | "real" => Ok(Algebra::R),
            "C" | "c" | "complex" => Ok(Algebra::C),
            "H" | "h" | "quaternion" => Ok(Algebra::H),
            "O" | "o" | "octonion" => Ok(Algebra::O),
            other => Err(Error::Invalid(format!("unknown algebra {other:?}"))),
        }
    }
}

/// `e_i · e_j = sign · e_index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisProduct {
    pub sign: i8,
    pub index: usize,
}

/// Multiplication table of an algebra on its canonical basis `e_0 = 1, e_1, …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    algebra: Algebra,
    table: Vec<Vec<BasisProduct>>,
}

impl StructureConstants {
    /// Builds the table by Cayley–Dickson doubling with the product
    /// `(a, b)(c, d) = (ac − d*b, da + bc*)`, where `e_{n+k} = (0, e_k)`.
    pub fn build(algebra: Algebra) -> Self {
        let mut table = vec![vec![BasisProduct { sign: 1, index: 0 }]];
        for _ in 0..algebra.level() {
            table = double(&table);
        }
        StructureConstants { algebra, table }
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn dim(&self) -> usize {
        self.table.len()
    }

    pub fn product(&self, i: usize, j: usize) -> BasisProduct {
        self.table[i][j]
    }

    /// Rows of signed indices, `"+3"` / `"-0"` style, for golden files.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for row in &self.table {
            let cells: Vec<String> = row
                .iter()
                .map(|p| format!("{}e{}", if p.sign > 0 { '+' } else { '-' }, p.index))
                .collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

// Conjugation sign of a basis element: e_0* = e_0, e_i* = −e_i.
fn conj_sign(i: usize) -> i8 {
    if i == 0 {
        1
    } else {
        -1
    }
}

fn double(t: &[Vec<BasisProduct>]) -> Vec<Vec<BasisProduct>> {
    let n = t.len();
    let mut out = vec![vec![BasisProduct { sign: 0, index: 0 }; 2 * n]; 2 * n];
    for i in 0..2 * n {
        for j in 0..2 * n {
            out[i][j] = match (i < n, j < n) {
                // (a,0)(c,0) = (ac, 0)
                (true, true) => t[i][j],
                // (a,0)(0,d) = (0, da)
                (true, false) => {
                    let p = t[j - n][i];
                    BasisProduct { sign: p.sign, index: p.index + n }
                }
                // (0,b)(c,0) = (0, bc*)
                (false, true) => {
                    let p = t[i - n][j];
                    BasisProduct { sign: p.sign * conj_sign(j), index: p.index + n }
                }
                // (0,b)(0,d) = (−d*b, 0)
                (false, false) => {
                    let p = t[j - n][i - n];
                    BasisProduct { sign: -p.sign * conj_sign(j - n), index: p.index }
                }
            };
        }
    }
    out
}
