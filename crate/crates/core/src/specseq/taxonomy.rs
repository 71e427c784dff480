use crate::gralg::{Monomial, Presentation};
use serde::{Deserialize, Serialize};

/// Chart colour of a class: u x-towers are black, rho-families red, cone classes green.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassColor {
    Black,
    Green,
    Red,
}

impl ClassColor {
    pub fn letter(&self) -> char {
        match self {
            ClassColor::Black => 'B',
            ClassColor::Green => 'G',
            ClassColor::Red => 'R',
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ClassColor::Black => "black",
            ClassColor::Green => "green",
            ClassColor::Red => "red",
        }
    }
}

pub fn classify(pres: &Presentation, m: &Monomial) -> ClassColor {
    if pres.on_cone(m) {
        return ClassColor::Green;
    }
    match pres.alphabet.index("rho") {
        Some(r) if m.exps[r] > 0 => ClassColor::Red,
        _ => ClassColor::Black,
    }
}
