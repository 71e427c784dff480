use crate::gralg::abelian::{solve_in_span, AbGroup, GroupMap};
use crate::gralg::matrix::{dense_columns, dense_from_columns, dense_identity, dense_mul, dense_zeros, Dense};
use crate::gralg::GroupSummary;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::Zero;

/// A C2-Mackey functor: fixed level, underlying level and structure maps.
#[derive(Clone, Debug)]
pub struct MackeyFunctor {
    pub top: AbGroup,
    pub bottom: AbGroup,
    /// bottom x top
    pub res: Dense,
    /// top x bottom
    pub tr: Dense,
    /// bottom x bottom
    pub weyl: Dense,
}

fn scalar(n: usize, k: i64) -> Dense {
    let mut d = dense_identity(n);
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = BigInt::from(k);
    }
    d
}

fn maps_equal(a: &Dense, b: &Dense, source: &AbGroup, target: &AbGroup) -> Result<bool> {
    let n = source.ngens;
    for j in 0..n {
        let col: Vec<BigInt> = (0..target.ngens).map(|i| &a[i][j] - &b[i][j]).collect();
        if !target.is_zero_element(&col)? {
            return Ok(false);
        }
    }
    Ok(true)
}

impl MackeyFunctor {
    /// Constant functor on B: res = 1, tr = 2, weyl = 1.
    pub fn constant(b: &AbGroup) -> Self {
        let n = b.ngens;
        MackeyFunctor {
            top: b.clone(),
            bottom: b.clone(),
            res: dense_identity(n),
            tr: scalar(n, 2),
            weyl: dense_identity(n),
        }
    }

    pub fn check_axioms(&self) -> Result<()> {
        let (t, b) = (&self.top, &self.bottom);
        GroupMap::new(t.clone(), b.clone(), self.res.clone())?;
        GroupMap::new(b.clone(), t.clone(), self.tr.clone())?;
        GroupMap::new(b.clone(), b.clone(), self.weyl.clone())?;
        let nb = b.ngens;
        let nt = t.ngens;
        let res_tr = dense_mul(&self.res, &self.tr, nt, nb);
        let one_plus_w: Dense = (0..nb)
            .map(|i| (0..nb).map(|j| &self.weyl[i][j] + BigInt::from((i == j) as i64)).collect())
            .collect();
        if !maps_equal(&res_tr, &one_plus_w, b, b)? {
            return Err(Error::Inconsistent("res tr != 1 + weyl".into()));
        }
        if !maps_equal(&dense_mul(&self.tr, &self.weyl, nb, nb), &self.tr, b, t)? {
            return Err(Error::Inconsistent("tr weyl != tr".into()));
        }
        if !maps_equal(&dense_mul(&self.weyl, &self.res, nb, nt), &self.res, t, b)? {
            return Err(Error::Inconsistent("weyl res != res".into()));
        }
        if !maps_equal(&dense_mul(&self.weyl, &self.weyl, nb, nb), &dense_identity(nb), b, b)? {
            return Err(Error::Inconsistent("weyl is not an involution".into()));
        }
        Ok(())
    }

    /// When both levels are cyclic: (top, bottom, res, tr, weyl) as scalars on generators.
    pub fn cyclic_report(&self) -> Result<Option<CyclicMackey>> {
        let td = self.top.decompose()?;
        let bd = self.bottom.decompose()?;
        if td.len() > 1 || bd.len() > 1 {
            return Ok(None);
        }
        let top = self.top.summary()?;
        let bottom = self.bottom.summary()?;
        let coeff = |map: &Dense, src: &[(Option<BigInt>, Vec<BigInt>)], tgt: &[(Option<BigInt>, Vec<BigInt>)], tg: &AbGroup| -> Result<Option<BigInt>> {
            let (Some(s), Some(t)) = (src.first(), tgt.first()) else { return Ok(None) };
            let img: Vec<BigInt> = (0..tg.ngens).map(|i| (0..s.1.len()).map(|j| &map[i][j] * &s.1[j]).sum()).collect();
            let mut cols = vec![t.1.clone()];
            cols.extend(tg.relations.iter().cloned());
            let c = solve_in_span(&cols, tg.ngens, &img)?
                .ok_or_else(|| Error::Inconsistent("image outside the cyclic group".into()))?;
            let mut k = c[0].clone();
            if let Some(o) = &t.0 {
                k = num_integer::Integer::mod_floor(&k, o);
            }
            Ok(Some(k))
        };
        Ok(Some(CyclicMackey {
            top,
            bottom,
            res: coeff(&self.res, &td, &bd, &self.bottom)?,
            tr: coeff(&self.tr, &bd, &td, &self.top)?,
            weyl: coeff(&self.weyl, &bd, &bd, &self.bottom)?,
        }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicMackey {
    pub top: GroupSummary,
    pub bottom: GroupSummary,
    pub res: Option<BigInt>,
    pub tr: Option<BigInt>,
    pub weyl: Option<BigInt>,
}

/// res, tr and weyl of a cyclic Mackey functor on chosen generators.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct MackeyScalars {
    pub top: String,
    pub bottom: String,
    pub res: String,
    pub tr: String,
    pub weyl: String,
}

impl MackeyScalars {
    /// None unless both levels are nonzero cyclic groups.
    pub fn of(f: &MackeyFunctor) -> Result<Option<Self>> {
        f.check_axioms()?;
        let Some(c) = f.cyclic_report()? else { return Ok(None) };
        let (Some(res), Some(tr), Some(weyl)) = (c.res, c.tr, c.weyl) else { return Ok(None) };
        let name = |s: &GroupSummary| match (s.free_rank, s.torsion.as_slice()) {
            (1, []) => "Z".to_string(),
            (0, [t]) => format!("Z/{t}"),
            _ => "?".to_string(),
        };
        Ok(Some(MackeyScalars {
            top: name(&c.top),
            bottom: name(&c.bottom),
            res: res.to_string(),
            tr: tr.to_string(),
            weyl: weyl.to_string(),
        }))
    }
}

/// A map of Mackey functors given levelwise.
#[derive(Clone, Debug)]
pub struct MackeyMap {
    pub source: MackeyFunctor,
    pub target: MackeyFunctor,
    pub top: Dense,
    pub bottom: Dense,
}

// express each column of `images` in terms of `gens` modulo `rel`
fn lift_through(gens: &[Vec<BigInt>], rel: &AbGroup, images: &[Vec<BigInt>]) -> Result<Dense> {
    let mut cols = gens.to_vec();
    cols.extend(rel.relations.iter().cloned());
    let mut out = Vec::new();
    for img in images {
        let c = solve_in_span(&cols, rel.ngens, img)?
            .ok_or_else(|| Error::Inconsistent("induced map does not land in the kernel".into()))?;
        out.push(c[..gens.len()].to_vec());
    }
    if out.is_empty() {
        return Ok(dense_zeros(gens.len(), 0));
    }
    Ok(dense_from_columns(&out, gens.len()))
}

fn apply_cols(m: &Dense, cols: &[Vec<BigInt>], nrows: usize) -> Vec<Vec<BigInt>> {
    cols.iter()
        .map(|c| (0..nrows).map(|i| c.iter().enumerate().map(|(j, x)| &m[i][j] * x).sum()).collect())
        .collect()
}

impl MackeyMap {
    pub fn new(source: MackeyFunctor, target: MackeyFunctor, top: Dense, bottom: Dense) -> Result<Self> {
        let f = MackeyMap { source, target, top, bottom };
        f.check_equivariant()?;
        Ok(f)
    }

    fn check_equivariant(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        GroupMap::new(s.top.clone(), t.top.clone(), self.top.clone())?;
        GroupMap::new(s.bottom.clone(), t.bottom.clone(), self.bottom.clone())?;
        let (nst, nsb, ntt, ntb) = (s.top.ngens, s.bottom.ngens, t.top.ngens, t.bottom.ngens);
        let lhs = dense_mul(&t.res, &self.top, ntt, nst);
        let rhs = dense_mul(&self.bottom, &s.res, nsb, nst);
        if !maps_equal(&lhs, &rhs, &s.top, &t.bottom)? {
            return Err(Error::Inconsistent("map does not commute with res".into()));
        }
        let lhs = dense_mul(&t.tr, &self.bottom, ntb, nsb);
        let rhs = dense_mul(&self.top, &s.tr, nst, nsb);
        if !maps_equal(&lhs, &rhs, &s.bottom, &t.top)? {
            return Err(Error::Inconsistent("map does not commute with tr".into()));
        }
        let lhs = dense_mul(&t.weyl, &self.bottom, ntb, nsb);
        let rhs = dense_mul(&self.bottom, &s.weyl, nsb, nsb);
        if !maps_equal(&lhs, &rhs, &s.bottom, &t.bottom)? {
            return Err(Error::Inconsistent("map does not commute with weyl".into()));
        }
        Ok(())
    }

    pub fn kernel_cokernel(&self) -> Result<(MackeyFunctor, MackeyFunctor)> {
        let (s, t) = (&self.source, &self.target);
        let ftop = GroupMap::new(s.top.clone(), t.top.clone(), self.top.clone())?;
        let fbot = GroupMap::new(s.bottom.clone(), t.bottom.clone(), self.bottom.clone())?;
        let (ktop, gtop) = ftop.kernel()?;
        let (kbot, gbot) = fbot.kernel()?;
        let res = lift_through(&gbot, &s.bottom, &apply_cols(&s.res, &gtop, s.bottom.ngens))?;
        let tr = lift_through(&gtop, &s.top, &apply_cols(&s.tr, &gbot, s.top.ngens))?;
        let weyl = lift_through(&gbot, &s.bottom, &apply_cols(&s.weyl, &gbot, s.bottom.ngens))?;
        let kernel = MackeyFunctor { top: ktop, bottom: kbot, res, tr, weyl };
        kernel.check_axioms()?;
        let coker = MackeyFunctor {
            top: ftop.cokernel(),
            bottom: fbot.cokernel(),
            res: t.res.clone(),
            tr: t.tr.clone(),
            weyl: t.weyl.clone(),
        };
        coker.check_axioms()?;
        Ok((kernel, coker))
    }
}

pub fn columns(d: &Dense, ncols: usize) -> Vec<Vec<BigInt>> {
    dense_columns(d, ncols)
}

pub fn is_zero_matrix(d: &Dense) -> bool {
    d.iter().all(|r| r.iter().all(|x| x.is_zero()))
}
