use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Grading (s, t, w): filtration, second index of a page, weight.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Tridegree {
    pub s: i64,
    pub t: i64,
    pub w: i64,
}

impl Tridegree {
    pub const ZERO: Tridegree = Tridegree { s: 0, t: 0, w: 0 };

    pub const fn new(s: i64, t: i64, w: i64) -> Self {
        Tridegree { s, t, w }
    }

    /// Total degree of the abutment.
    pub fn stem(&self) -> i64 {
        self.s + self.t
    }

    pub fn key(&self) -> String {
        format!("{},{},{}", self.s, self.t, self.w)
    }

    pub fn as_array(&self) -> [i64; 3] {
        [self.s, self.t, self.w]
    }
}

impl Add for Tridegree {
    type Output = Tridegree;
    fn add(self, o: Tridegree) -> Tridegree {
        Tridegree::new(self.s + o.s, self.t + o.t, self.w + o.w)
    }
}

impl Sub for Tridegree {
    type Output = Tridegree;
    fn sub(self, o: Tridegree) -> Tridegree {
        Tridegree::new(self.s - o.s, self.t - o.t, self.w - o.w)
    }
}

impl Neg for Tridegree {
    type Output = Tridegree;
    fn neg(self) -> Tridegree {
        Tridegree::new(-self.s, -self.t, -self.w)
    }
}

impl Mul<i64> for Tridegree {
    type Output = Tridegree;
    fn mul(self, k: i64) -> Tridegree {
        Tridegree::new(self.s * k, self.t * k, self.w * k)
    }
}

impl fmt::Display for Tridegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.s, self.t, self.w)
    }
}

/// Allowed exponents of a generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpRange {
    NonNeg,
    Laurent,
    /// exponent 0 or 1; switches the cone generators to nonpositive exponents
    Marker,
    /// nonnegative off the cone, nonpositive on it
    Cone,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: Tridegree,
    pub range: ExpRange,
}

impl GeneratorSpec {
    pub fn new(name: &str, degree: Tridegree, range: ExpRange) -> Self {
        GeneratorSpec { name: name.to_string(), degree, range }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alphabet {
    pub gens: Vec<GeneratorSpec>,
}

impl Alphabet {
    pub fn new(gens: Vec<GeneratorSpec>) -> Self {
        Alphabet { gens }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn marker(&self) -> Option<usize> {
        self.gens.iter().position(|g| g.range == ExpRange::Marker)
    }

    pub fn degree(&self, m: &Monomial) -> Tridegree {
        m.exps.iter().zip(&self.gens).fold(Tridegree::ZERO, |acc, (&e, g)| acc + g.degree * e)
    }

    pub fn unit(&self) -> Monomial {
        Monomial { exps: vec![0; self.len()] }
    }

    pub fn generator(&self, i: usize) -> Monomial {
        let mut m = self.unit();
        m.exps[i] = 1;
        m
    }

    pub fn format(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .exps
            .iter()
            .zip(&self.gens)
            .filter(|(e, _)| **e != 0)
            .map(|(&e, g)| if e == 1 { g.name.clone() } else { format!("{}^{}", g.name, e) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }

    /// Parses "theta tau^-2 u^3" style products; "1" is the unit.
    pub fn parse(&self, text: &str) -> Option<Monomial> {
        let mut m = self.unit();
        for tok in text.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
            if tok == "1" {
                continue;
            }
            let (name, e) = match tok.split_once('^') {
                Some((n, e)) => (n, e.parse::<i64>().ok()?),
                None => (tok, 1),
            };
            let i = self.index(name)?;
            m.exps[i] += e;
        }
        Some(m)
    }
}

/// Exponent vector over an alphabet; ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub exps: Vec<i64>,
}

impl Monomial {
    pub fn new(exps: Vec<i64>) -> Self {
        Monomial { exps }
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    pub fn over(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect() }
    }

    pub fn with(&self, i: usize, e: i64) -> Monomial {
        let mut m = self.clone();
        m.exps[i] = e;
        m
    }

    pub fn exp(&self, i: usize) -> i64 {
        self.exps[i]
    }
}
