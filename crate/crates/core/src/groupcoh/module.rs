use crate::coeff::gfp_thr_f2_coefficients;
use crate::gralg::{FpMatrix, Subspace, Tridegree};
use crate::{Error, Result};

/// F_p-vector space with an involution sigma.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GModule {
    pub p: u64,
    pub dim: usize,
    pub sigma: FpMatrix,
    pub basis_names: Vec<String>,
}

impl GModule {
    pub fn new(sigma: FpMatrix, basis_names: Vec<String>) -> Result<Self> {
        let p = sigma.p;
        let n = sigma.nrows;
        if sigma.ncols != n || basis_names.len() != n {
            return Err(Error::Presentation("action matrix must be square".into()));
        }
        if sigma.mul(&sigma) != FpMatrix::identity(p, n) {
            return Err(Error::Presentation("sigma does not square to the identity".into()));
        }
        Ok(GModule { p, dim: n, sigma, basis_names })
    }

    pub fn trivial(p: u64, dim: usize) -> Self {
        let names = (0..dim).map(|i| format!("e{i}")).collect();
        GModule { p, dim, sigma: FpMatrix::identity(p, dim), basis_names: names }
    }

    /// F_p[mu_2] with basis 1, sigma.
    pub fn free(p: u64) -> Self {
        let s = FpMatrix::from_rows(p, 2, vec![vec![0, 1], vec![1, 0]]);
        GModule { p, dim: 2, sigma: s, basis_names: vec!["1".into(), "sigma".into()] }
    }

    pub fn direct_sum(&self, other: &GModule) -> GModule {
        let n = self.dim + other.dim;
        let mut s = FpMatrix::zeros(self.p, n, n);
        for i in 0..self.dim {
            for j in 0..self.dim {
                s.set(i, j, self.sigma.get(i, j));
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                s.set(self.dim + i, self.dim + j, other.sigma.get(i, j));
            }
        }
        let mut names = self.basis_names.clone();
        names.extend(other.basis_names.iter().cloned());
        GModule { p: self.p, dim: n, sigma: s, basis_names: names }
    }

    /// 1 - sigma for even s, the norm 1 + sigma for odd s.
    pub fn delta(&self, s: i64) -> FpMatrix {
        let id = FpMatrix::identity(self.p, self.dim);
        if s.rem_euclid(2) == 0 {
            id.add(&self.sigma.scale(self.p - 1))
        } else {
            id.add(&self.sigma)
        }
    }

    pub fn is_equivariant(&self, target: &GModule, f: &FpMatrix) -> bool {
        f.mul(&self.sigma) == target.sigma.mul(f)
    }

    /// The sigma-stable subspace spanned by `vectors`, with its inclusion.
    pub fn submodule(&self, vectors: &[Vec<u64>]) -> Result<(GModule, FpMatrix)> {
        let sub = Subspace::span(self.p, self.dim, vectors);
        let basis = sub.basis().to_vec();
        let incl = FpMatrix::from_columns(self.p, self.dim, &basis);
        let mut cols = Vec::new();
        for b in &basis {
            let img = self.sigma.apply(b);
            cols.push(incl.solve(&img).ok_or_else(|| Error::Presentation("subspace is not sigma-stable".into()))?);
        }
        let names = (0..basis.len()).map(|i| format!("b{i}")).collect();
        Ok((GModule::new(FpMatrix::from_columns(self.p, basis.len(), &cols), names)?, incl))
    }

    /// Quotient by a sigma-stable subspace, with the projection. The quotient basis
    /// is given by the ambient basis vectors that are not pivots of the subspace.
    pub fn quotient(&self, vectors: &[Vec<u64>]) -> Result<(GModule, FpMatrix)> {
        let sub = Subspace::span(self.p, self.dim, vectors);
        for b in sub.basis() {
            if !sub.contains(&self.sigma.apply(b)) {
                return Err(Error::Presentation("subspace is not sigma-stable".into()));
            }
        }
        let free: Vec<usize> = (0..self.dim).filter(|i| !sub.pivots().contains(i)).collect();
        let k = free.len();
        let project = |v: &[u64]| -> Vec<u64> {
            let r = sub.reduce(v);
            free.iter().map(|&i| r[i]).collect()
        };
        let mut q = FpMatrix::zeros(self.p, k, self.dim);
        for j in 0..self.dim {
            let mut e = vec![0; self.dim];
            e[j] = 1;
            for (i, x) in project(&e).into_iter().enumerate() {
                q.set(i, j, x);
            }
        }
        let mut s = FpMatrix::zeros(self.p, k, k);
        for (j, &f) in free.iter().enumerate() {
            let img = project(&self.sigma.column(f));
            for (i, x) in img.into_iter().enumerate() {
                s.set(i, j, x);
            }
        }
        let names = free.iter().map(|&i| self.basis_names[i].clone()).collect();
        Ok((GModule::new(s, names)?, q))
    }
}

/// Degree-t piece of F2[w1, w2] with the swap, basis in the presentation's order.
pub fn symmetric_piece(t: i64) -> Result<GModule> {
    let c = gfp_thr_f2_coefficients();
    let pres = &c.presentation;
    let basis = pres.degree_basis(Tridegree::new(t, 0, 0))?;
    let n = basis.len();
    let mut s = FpMatrix::zeros(2, n, n);
    for (j, m) in basis.iter().enumerate() {
        let img = c.apply_involution(m);
        let i = basis.binary_search(&img).map_err(|_| Error::Inconsistent("involution leaves the basis".into()))?;
        s.set(i, j, 1);
    }
    GModule::new(s, basis.iter().map(|m| pres.format(m)).collect())
}

/// Subquotient ker delta^s / im delta^{s-1} with chosen representatives.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    pub s: i64,
    pub reps: Vec<Vec<u64>>,
    pub boundaries: Subspace,
    pub p: u64,
}

impl CohomologyGroup {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn coords(&self, v: &[u64]) -> Option<Vec<u64>> {
        let n = self.boundaries.dim_ambient;
        let mut cols = self.reps.clone();
        cols.extend(self.boundaries.basis().iter().cloned());
        if cols.is_empty() {
            return v.iter().all(|&x| x == 0).then(Vec::new);
        }
        FpMatrix::from_columns(self.p, n, &cols).solve(v).map(|x| x[..self.reps.len()].to_vec())
    }
}

fn subquotient(m: &GModule, s: i64, with_incoming: bool) -> CohomologyGroup {
    let cycles = m.delta(s).kernel();
    let boundaries = if with_incoming {
        let d = m.delta(s - 1);
        Subspace::span(m.p, m.dim, &(0..m.dim).map(|j| d.column(j)).collect::<Vec<_>>())
    } else {
        Subspace::zero(m.p, m.dim)
    };
    let mut acc = boundaries.clone();
    let mut reps = Vec::new();
    for z in cycles {
        if acc.insert(&z) {
            reps.push(z);
        }
    }
    CohomologyGroup { s, reps, boundaries, p: m.p }
}

/// H^s(mu_2; M) for s in the range, from the 2-periodic resolution.
pub fn c2_cohomology(m: &GModule, s_range: (i64, i64)) -> Result<Vec<CohomologyGroup>> {
    if s_range.0 < 0 {
        return Err(Error::Window("group cohomology lives in s >= 0".into()));
    }
    Ok((s_range.0..=s_range.1).map(|s| subquotient(m, s, s > 0)).collect())
}

/// Tate cohomology, all integer degrees.
pub fn c2_tate(m: &GModule, s_range: (i64, i64)) -> Vec<CohomologyGroup> {
    (s_range.0..=s_range.1).map(|s| subquotient(m, s, true)).collect()
}

/// Matrix of the map induced by an equivariant f on a pair of subquotients.
pub fn induced_map(f: &FpMatrix, source: &CohomologyGroup, target: &CohomologyGroup) -> Result<FpMatrix> {
    let mut cols = Vec::new();
    for r in &source.reps {
        let img = f.apply(r);
        cols.push(target.coords(&img).ok_or_else(|| Error::Inconsistent("image is not a cocycle".into()))?);
    }
    Ok(FpMatrix::from_columns(f.p, target.dim(), &cols))
}

/// 0 -> A -i-> B -q-> C -> 0.
#[derive(Clone, Debug)]
pub struct ShortExact {
    pub a: GModule,
    pub b: GModule,
    pub c: GModule,
    pub i: FpMatrix,
    pub q: FpMatrix,
}

impl ShortExact {
    pub fn new(a: GModule, b: GModule, c: GModule, i: FpMatrix, q: FpMatrix) -> Result<Self> {
        let ok_shapes = i.nrows == b.dim && i.ncols == a.dim && q.nrows == c.dim && q.ncols == b.dim;
        if !ok_shapes {
            return Err(Error::Presentation("short exact sequence has mismatched shapes".into()));
        }
        if !a.is_equivariant(&b, &i) || !b.is_equivariant(&c, &q) {
            return Err(Error::Presentation("maps are not equivariant".into()));
        }
        let exact = i.rank() == a.dim && q.rank() == c.dim && q.mul(&i).is_zero() && a.dim + c.dim == b.dim;
        if !exact {
            return Err(Error::Presentation("sequence is not exact".into()));
        }
        Ok(ShortExact { a, b, c, i, q })
    }

    /// From a sigma-stable subspace of B.
    pub fn from_submodule(b: &GModule, vectors: &[Vec<u64>]) -> Result<Self> {
        let (a, i) = b.submodule(vectors)?;
        let (c, q) = b.quotient(vectors)?;
        ShortExact::new(a, b.clone(), c, i, q)
    }
}

/// Snake-lemma connecting map H^s(C) -> H^{s+1}(A); Tate degrees allowed.
pub fn connecting_map(ses: &ShortExact, s: i64) -> Result<FpMatrix> {
    let hc = subquotient(&ses.c, s, true);
    let ha = subquotient(&ses.a, s + 1, true);
    connecting_on(ses, s, &hc, &ha)
}

fn connecting_on(ses: &ShortExact, s: i64, hc: &CohomologyGroup, ha: &CohomologyGroup) -> Result<FpMatrix> {
    let db = ses.b.delta(s);
    let mut cols = Vec::new();
    for z in &hc.reps {
        let lift = ses.q.solve(z).ok_or_else(|| Error::Inconsistent("projection is not onto".into()))?;
        let d = db.apply(&lift);
        let a = ses.i.solve(&d).ok_or_else(|| Error::Inconsistent("coboundary of a lift leaves A".into()))?;
        cols.push(ha.coords(&a).ok_or_else(|| Error::Inconsistent("connecting image is not a cocycle".into()))?);
    }
    Ok(FpMatrix::from_columns(ses.a.p, ha.dim(), &cols))
}

/// Checks exactness of the long exact sequence in Tate cohomology on a range of
/// degrees; returns the number of nodes checked.
pub fn les_check(ses: &ShortExact, s_range: (i64, i64)) -> Result<usize> {
    let mut maps: Vec<FpMatrix> = Vec::new();
    let mut dims: Vec<usize> = Vec::new();
    for s in s_range.0..=s_range.1 {
        let ha = subquotient(&ses.a, s, true);
        let hb = subquotient(&ses.b, s, true);
        let hc = subquotient(&ses.c, s, true);
        let ha1 = subquotient(&ses.a, s + 1, true);
        maps.push(induced_map(&ses.i, &ha, &hb)?);
        maps.push(induced_map(&ses.q, &hb, &hc)?);
        maps.push(connecting_on(ses, s, &hc, &ha1)?);
        dims.extend([ha.dim(), hb.dim(), hc.dim()]);
    }
    let mut checked = 0;
    for k in 1..maps.len() {
        let (f, g) = (&maps[k - 1], &maps[k]);
        if !g.mul(f).is_zero() {
            return Err(Error::Inconsistent(format!("long exact sequence composite {k} is nonzero")));
        }
        if f.rank() + g.rank() != dims[k] {
            return Err(Error::Inconsistent(format!("long exact sequence not exact at node {k}")));
        }
        checked += 1;
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(gs: &[CohomologyGroup]) -> Vec<usize> {
        gs.iter().map(|g| g.dim()).collect()
    }

    #[test]
    fn trivial_and_free() {
        assert_eq!(dims(&c2_cohomology(&GModule::trivial(2, 1), (0, 5)).unwrap()), vec![1; 6]);
        assert_eq!(dims(&c2_cohomology(&GModule::free(2), (0, 5)).unwrap()), vec![1, 0, 0, 0, 0, 0]);
        assert_eq!(dims(&c2_tate(&GModule::free(2), (-3, 3))), vec![0; 7]);
        assert_eq!(dims(&c2_tate(&GModule::trivial(2, 1), (-3, 3))), vec![1; 7]);
    }

    #[test]
    fn odd_prime_trivial() {
        // over F_3 the order of the group is invertible
        assert_eq!(dims(&c2_tate(&GModule::trivial(3, 1), (-2, 2))), vec![0; 5]);
    }

    #[test]
    fn symmetric_pieces() {
        let m3 = symmetric_piece(3).unwrap();
        assert_eq!(dims(&c2_cohomology(&m3, (0, 4)).unwrap()), vec![2, 0, 0, 0, 0]);
        for t in 0..8 {
            let want = if t % 2 == 0 { 1 } else { 0 };
            assert_eq!(dims(&c2_tate(&symmetric_piece(t).unwrap(), (-2, 2))), vec![want; 5]);
        }
    }

    #[test]
    fn split_sequence_has_zero_connecting_map() {
        let a = GModule::trivial(2, 1);
        let b = a.direct_sum(&GModule::trivial(2, 1));
        let ses = ShortExact::from_submodule(&b, &[vec![1, 0]]).unwrap();
        for s in -2..3 {
            assert!(connecting_map(&ses, s).unwrap().is_zero());
        }
        assert!(les_check(&ses, (-2, 3)).unwrap() > 0);
    }

    #[test]
    fn non_exact_rejected() {
        let a = GModule::trivial(2, 1);
        let b = GModule::free(2);
        let bad = FpMatrix::from_rows(2, 2, vec![vec![1, 1]]);
        let i = FpMatrix::from_rows(2, 1, vec![vec![1], vec![0]]);
        assert!(ShortExact::new(a.clone(), b, a, i, bad).is_err());
    }
}
