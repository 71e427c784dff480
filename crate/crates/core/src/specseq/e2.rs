//! E2 presentations of the x-adic spectral sequences.

use crate::gralg::{BaseRing, ExpRange, GeneratorSpec, Presentation, Tridegree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// homotopy fixed points: power series in u
    Fixed,
    /// Tate: Laurent series in u
    Tate,
}

fn u_range(f: Flavor) -> ExpRange {
    match f {
        Flavor::Fixed => ExpRange::NonNeg,
        Flavor::Tate => ExpRange::Laurent,
    }
}

pub const U_DEG: Tridegree = Tridegree::new(-2, 0, -1);
pub const X_DEG: Tridegree = Tridegree::new(0, 2, 1);

/// HF2 coefficients (tau, rho, theta-cone) tensored with u and x.
pub fn e2_f2(flavor: Flavor) -> Presentation {
    let name = match flavor {
        Flavor::Fixed => "hfpss",
        Flavor::Tate => "tss",
    };
    Presentation::new(
        name,
        BaseRing::fp(2),
        vec![
            GeneratorSpec::new("tau", Tridegree::new(0, 0, -1), ExpRange::Cone),
            GeneratorSpec::new("rho", Tridegree::new(-1, 0, -1), ExpRange::Cone),
            GeneratorSpec::new("theta", Tridegree::new(0, 0, 2), ExpRange::Marker),
            GeneratorSpec::new("u", U_DEG, u_range(flavor)),
            GeneratorSpec::new("x", X_DEG, ExpRange::NonNeg),
        ],
        vec![],
    )
}

/// F_p[tau^{+-2}] tensored with u and x, p odd.
pub fn e2_odd(p: u64, flavor: Flavor) -> Presentation {
    let name = match flavor {
        Flavor::Fixed => format!("hfpss_p{p}"),
        Flavor::Tate => format!("tss_p{p}"),
    };
    Presentation::new(
        &name,
        BaseRing::fp(p),
        vec![
            GeneratorSpec::new("tau2", Tridegree::new(0, 0, -4), ExpRange::Laurent),
            GeneratorSpec::new("u", U_DEG, u_range(flavor)),
            GeneratorSpec::new("x", X_DEG, ExpRange::NonNeg),
        ],
        vec![],
    )
}

/// Underlying (non-equivariant) E2: F_p[u, x] or F_p[u^{+-1}, x], weight forgotten.
pub fn e2_underlying(p: u64, flavor: Flavor) -> Presentation {
    let name = match flavor {
        Flavor::Fixed => "hfpss_e",
        Flavor::Tate => "tss_e",
    };
    Presentation::new(
        name,
        BaseRing::fp(p),
        vec![
            GeneratorSpec::new("u", Tridegree::new(-2, 0, 0), u_range(flavor)),
            GeneratorSpec::new("x", Tridegree::new(0, 2, 0), ExpRange::NonNeg),
        ],
        vec![],
    )
}

/// Presentation by pipeline name, as used by the command line.
pub fn by_name(name: &str, p: u64) -> Option<Presentation> {
    match (name, p) {
        ("hfpss", 2) => Some(e2_f2(Flavor::Fixed)),
        ("tss", 2) => Some(e2_f2(Flavor::Tate)),
        ("hfpss", _) => Some(e2_odd(p, Flavor::Fixed)),
        ("tss", _) => Some(e2_odd(p, Flavor::Tate)),
        ("hfpss-e", _) => Some(e2_underlying(p, Flavor::Fixed)),
        ("tss-e", _) => Some(e2_underlying(p, Flavor::Tate)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_pieces() {
        let h = e2_f2(Flavor::Fixed);
        assert_eq!(h.degree_basis(Tridegree::new(0, 0, 0)).unwrap(), vec![h.alphabet.unit()]);
        assert_eq!(h.degree_basis(Tridegree::new(-2, 0, -1)).unwrap(), vec![h.monomial("u")]);
        for t in [1, 3, 5] {
            for s in -6..=2 {
                assert!(h.degree_basis(Tridegree::new(s, t, 0)).unwrap().is_empty());
            }
        }
        let t = e2_f2(Flavor::Tate);
        assert_eq!(t.degree_basis(Tridegree::new(2, 0, 1)).unwrap(), vec![t.monomial("u^-1")]);
    }
}
