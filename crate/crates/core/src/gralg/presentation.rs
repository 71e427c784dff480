//! Monomial algebras: an alphabet with admissibility and rewriting rules.

use super::monomial::{Alphabet, ExpRange, GeneratorSpec, Monomial, Tridegree};
use super::ring::BaseRing;
use crate::{Error, Result};
use num_integer::Integer;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Rule {
    /// `inverse` is rewritten as `unit^-1`
    UnitPair { unit: usize, inverse: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub name: String,
    pub ring: BaseRing,
    pub alphabet: Alphabet,
    pub rules: Vec<Rule>,
}

/// Affine solution of the degree equations in terms of the free exponents.
#[derive(Clone, Debug)]
struct Solver {
    pivots: Vec<usize>,
    free: Vec<usize>,
    rows: Vec<usize>,
    det: i64,
    adj: Vec<Vec<i64>>,
}

fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, &x)| x).collect()).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn adjugate(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = m.len();
    let mut adj = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = m
                .iter()
                .enumerate()
                .filter(|(r, _)| *r != i)
                .map(|(_, row)| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, &x)| x).collect())
                .collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[j][i] = sign * det(&minor);
        }
    }
    adj
}

impl Presentation {
    pub fn new(name: &str, ring: BaseRing, gens: Vec<GeneratorSpec>, rules: Vec<Rule>) -> Self {
        Presentation { name: name.to_string(), ring, alphabet: Alphabet::new(gens), rules }
    }

    pub fn gen(&self, name: &str) -> usize {
        self.alphabet.index(name).unwrap_or_else(|| panic!("no generator {name} in {}", self.name))
    }

    pub fn monomial(&self, text: &str) -> Monomial {
        self.alphabet.parse(text).unwrap_or_else(|| panic!("cannot parse {text}"))
    }

    pub fn degree(&self, m: &Monomial) -> Tridegree {
        self.alphabet.degree(m)
    }

    pub fn format(&self, m: &Monomial) -> String {
        self.alphabet.format(m)
    }

    pub fn on_cone(&self, m: &Monomial) -> bool {
        self.alphabet.marker().is_some_and(|k| m.exps[k] == 1)
    }

    pub fn admissible(&self, m: &Monomial) -> bool {
        if m.exps.len() != self.alphabet.len() {
            return false;
        }
        let cone = self.on_cone(m);
        for (e, g) in m.exps.iter().zip(&self.alphabet.gens) {
            let ok = match g.range {
                ExpRange::NonNeg => *e >= 0,
                ExpRange::Laurent => true,
                ExpRange::Marker => *e == 0 || *e == 1,
                ExpRange::Cone => {
                    if cone {
                        *e <= 0
                    } else {
                        *e >= 0
                    }
                }
            };
            if !ok {
                return false;
            }
        }
        self.rules.iter().all(|r| match r {
            Rule::UnitPair { inverse, .. } => m.exps[*inverse] == 0,
        })
    }

    /// Normal form of a formal exponent vector, `None` when it is zero.
    pub fn normalize(&self, m: &Monomial) -> Option<Monomial> {
        let mut m = m.clone();
        for r in &self.rules {
            match r {
                Rule::UnitPair { unit, inverse } => {
                    m.exps[*unit] -= m.exps[*inverse];
                    m.exps[*inverse] = 0;
                }
            }
        }
        if self.admissible(&m) {
            Some(m)
        } else {
            None
        }
    }

    pub fn multiply(&self, a: &Monomial, b: &Monomial) -> Option<Monomial> {
        self.normalize(&a.times(b))
    }

    fn solver(&self) -> Solver {
        let n = self.alphabet.len();
        let cols: Vec<[i64; 3]> = self.alphabet.gens.iter().map(|g| g.degree.as_array()).collect();
        // pivot preference: Laurent generators, then from the end; markers never
        let mut order: Vec<usize> = (0..n).rev().filter(|&i| self.alphabet.gens[i].range == ExpRange::Laurent).collect();
        order.extend((0..n).rev().filter(|&i| {
            !matches!(self.alphabet.gens[i].range, ExpRange::Laurent | ExpRange::Marker)
        }));
        order.extend((0..n).filter(|&i| self.alphabet.gens[i].range == ExpRange::Marker));
        let mut pivots: Vec<usize> = Vec::new();
        let mut rows: Vec<usize> = Vec::new();
        for &c in &order {
            let mut trial = pivots.clone();
            trial.push(c);
            // find a row set of matching size with nonzero minor
            let k = trial.len();
            if k > 3 {
                break;
            }
            let row_sets: Vec<Vec<usize>> = match k {
                1 => vec![vec![0], vec![1], vec![2]],
                2 => vec![vec![0, 1], vec![0, 2], vec![1, 2]],
                _ => vec![vec![0, 1, 2]],
            };
            for rs in row_sets {
                let sub: Vec<Vec<i64>> = rs.iter().map(|&r| trial.iter().map(|&c| cols[c][r]).collect()).collect();
                if det(&sub) != 0 {
                    pivots = trial.clone();
                    rows = rs;
                    break;
                }
            }
        }
        let sub: Vec<Vec<i64>> = rows.iter().map(|&r| pivots.iter().map(|&c| cols[c][r]).collect()).collect();
        let d = det(&sub);
        let adj = adjugate(&sub);
        let mut free: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
        // bounded free exponents are looped first, the last one is solved as an interval
        free.sort_by_key(|&i| match self.alphabet.gens[i].range {
            ExpRange::Marker => 0,
            ExpRange::Laurent => 1,
            _ => 2,
        });
        Solver { pivots, free, rows, det: d, adj }
    }

    /// All admissible normal-form monomials of degree `d`, sorted.
    pub fn degree_basis(&self, d: Tridegree) -> Result<Vec<Monomial>> {
        let sv = self.solver();
        let n = self.alphabet.len();
        let cols: Vec<[i64; 3]> = self.alphabet.gens.iter().map(|g| g.degree.as_array()).collect();
        let target = d.as_array();
        let bound = 4 * (d.s.abs() + d.t.abs() + d.w.abs()) + 16;
        let mut out = Vec::new();
        let mut exps = vec![0i64; n];
        self.enumerate(&sv, &cols, &target, bound, 0, &mut exps, &mut out)?;
        out.sort();
        out.dedup();
        Ok(out)
    }

    // pivot value as (numerator, det) given current free exponents
    fn pivot_values(&self, sv: &Solver, cols: &[[i64; 3]], target: &[i64; 3], exps: &[i64]) -> Vec<(i64, i64)> {
        let rhs: Vec<i64> = sv
            .rows
            .iter()
            .map(|&r| target[r] - sv.free.iter().map(|&f| cols[f][r] * exps[f]).sum::<i64>())
            .collect();
        (0..sv.pivots.len())
            .map(|i| (sv.adj[i].iter().zip(&rhs).map(|(a, b)| a * b).sum::<i64>(), sv.det))
            .collect()
    }

    fn range_bounds(&self, i: usize, cone: Option<bool>) -> (Option<i64>, Option<i64>) {
        match self.alphabet.gens[i].range {
            ExpRange::NonNeg => (Some(0), None),
            ExpRange::Laurent => (None, None),
            ExpRange::Marker => (Some(0), Some(1)),
            ExpRange::Cone => match cone {
                Some(true) => (None, Some(0)),
                Some(false) => (Some(0), None),
                None => (None, None),
            },
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn enumerate(
        &self,
        sv: &Solver,
        cols: &[[i64; 3]],
        target: &[i64; 3],
        bound: i64,
        depth: usize,
        exps: &mut Vec<i64>,
        out: &mut Vec<Monomial>,
    ) -> Result<()> {
        let marker = self.alphabet.marker();
        let cone = marker.and_then(|k| if sv.free.contains(&k) && sv.free.iter().position(|&f| f == k).unwrap() < depth {
            Some(exps[k] == 1)
        } else {
            None
        });
        if sv.free.is_empty() {
            self.finish(sv, cols, target, exps, out);
            return Ok(());
        }
        let var = sv.free[depth];
        let last = depth + 1 == sv.free.len();
        if !last {
            let (lo, hi) = self.range_bounds(var, cone);
            let lo = lo.unwrap_or(-bound);
            let hi = hi.unwrap_or(bound);
            for v in lo..=hi {
                exps[var] = v;
                let before = out.len();
                self.enumerate(sv, cols, target, bound, depth + 1, exps, out)?;
                if out.len() > before && (v == -bound || v == bound) {
                    return Err(Error::Unbounded(format!("{} at exponent box {bound}", self.name)));
                }
            }
            exps[var] = 0;
            return Ok(());
        }
        // interval for the last free exponent: affine constraints from every pivot
        let (mut lo, mut hi) = self.range_bounds(var, cone);
        exps[var] = 0;
        let base = self.pivot_values(sv, cols, target, exps);
        exps[var] = 1;
        let step = self.pivot_values(sv, cols, target, exps);
        exps[var] = 0;
        for (i, &pc) in sv.pivots.iter().enumerate() {
            // value(v) = (a + b v) / det
            let (a, dt) = base[i];
            let b = step[i].0 - a;
            let (plo, phi) = self.range_bounds(pc, cone);
            let (a, b, dt) = if dt < 0 { (-a, -b, -dt) } else { (a, b, dt) };
            // lower: a + b v >= plo * dt
            if let Some(l) = plo {
                let c = l * dt - a;
                if b > 0 {
                    let v = Integer::div_ceil(&c, &b);
                    lo = Some(lo.map_or(v, |x| x.max(v)));
                } else if b < 0 {
                    let v = Integer::div_floor(&c, &b);
                    hi = Some(hi.map_or(v, |x| x.min(v)));
                } else if a < l * dt {
                    return Ok(());
                }
            }
            if let Some(u) = phi {
                let c = u * dt - a;
                if b > 0 {
                    let v = Integer::div_floor(&c, &b);
                    hi = Some(hi.map_or(v, |x| x.min(v)));
                } else if b < 0 {
                    let v = Integer::div_ceil(&c, &b);
                    lo = Some(lo.map_or(v, |x| x.max(v)));
                } else if a > u * dt {
                    return Ok(());
                }
            }
        }
        let (Some(lo), Some(hi)) = (lo, hi) else {
            if cone.is_none() && marker.is_some_and(|k| sv.pivots.contains(&k)) {
                return Err(Error::Presentation(format!("{}: marker generator solved as pivot", self.name)));
            }
            return Err(Error::Unbounded(format!("{} in degree {:?}", self.name, target)));
        };
        for v in lo..=hi {
            exps[var] = v;
            self.finish(sv, cols, target, exps, out);
        }
        exps[var] = 0;
        Ok(())
    }

    fn finish(&self, sv: &Solver, cols: &[[i64; 3]], target: &[i64; 3], exps: &mut [i64], out: &mut Vec<Monomial>) {
        let vals = self.pivot_values(sv, cols, target, exps);
        for (i, &pc) in sv.pivots.iter().enumerate() {
            let (num, dt) = vals[i];
            if num % dt != 0 {
                return;
            }
            exps[pc] = num / dt;
        }
        let m = Monomial::new(exps.to_vec());
        for &pc in &sv.pivots {
            exps[pc] = 0;
        }
        let deg = self.degree(&m).as_array();
        if deg == *target && self.admissible(&m) {
            out.push(m);
        }
    }
}

/// Value a generator is sent to when specializing a presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecValue {
    Zero,
    One,
}

/// Ring map that kills or trivializes some generators and keeps the rest.
#[derive(Clone, Debug)]
pub struct Specialization {
    pub source: Presentation,
    pub target: Presentation,
    /// per source generator: kept index in the target, or the value it takes
    images: Vec<std::result::Result<usize, SpecValue>>,
}

impl Specialization {
    pub fn new(source: &Presentation, name: &str, values: &[(&str, SpecValue)]) -> Self {
        let mut gens = Vec::new();
        let mut images = Vec::new();
        for g in &source.alphabet.gens {
            match values.iter().find(|(n, _)| *n == g.name) {
                Some((_, v)) => images.push(Err(*v)),
                None => {
                    images.push(Ok(gens.len()));
                    let mut g = g.clone();
                    if g.range == ExpRange::Cone {
                        g.range = ExpRange::NonNeg;
                    }
                    gens.push(g);
                }
            }
        }
        let rules = source
            .rules
            .iter()
            .filter_map(|r| match r {
                Rule::UnitPair { unit, inverse } => match (images[*unit], images[*inverse]) {
                    (Ok(u), Ok(i)) => Some(Rule::UnitPair { unit: u, inverse: i }),
                    _ => None,
                },
            })
            .collect();
        let target = Presentation::new(name, source.ring, gens, rules);
        Specialization { source: source.clone(), target, images }
    }

    pub fn apply(&self, m: &Monomial) -> Option<Monomial> {
        let mut out = self.target.alphabet.unit();
        for (i, &e) in m.exps.iter().enumerate() {
            match self.images[i] {
                Ok(j) => out.exps[j] += e,
                Err(SpecValue::Zero) if e != 0 => return None,
                Err(_) => {}
            }
        }
        self.target.normalize(&out)
    }
}
