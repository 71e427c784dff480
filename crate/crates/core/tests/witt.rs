use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rcyclo_core::witt::{
    ghost_components, kernel_cokernel_at, tcr_perfect_answer, universal_polynomials, witt_ring, FiniteField, Fq,
    WittRing, WittVector,
};

fn random_vector(w: &WittRing, rng: &mut ChaCha8Rng) -> WittVector {
    (0..w.m).map(|_| w.field.element(rng.gen_range(0..w.field.order()))).collect()
}

fn eval_over_field(poly: &rcyclo_core::witt::universal::IntPoly, values: &[Fq], f: &FiniteField) -> Fq {
    let mut acc = f.zero();
    for (e, c) in &poly.terms {
        let c = num_integer::Integer::mod_floor(c, &BigInt::from(f.p));
        let c: u64 = c.try_into().unwrap();
        let mut term = f.zero();
        term[0] = c;
        for (k, v) in e.iter().zip(values) {
            term = f.mul(&term, &f.pow(v, *k as u64));
        }
        acc = f.add(&acc, &term);
    }
    acc
}

#[test]
fn prime_field_frobenius_is_identity() {
    for m in 1..5 {
        let w = witt_ring(2, 1, m).unwrap();
        assert!(w.one_minus_f().iter().all(|r| r.iter().all(|x| *x == BigInt::from(0))));
    }
}

#[test]
fn f4_length_one_exhaustive() {
    let w = witt_ring(2, 2, 1).unwrap();
    let r = &w.quotient;
    let elems = w.field.elements();
    let kernel = elems.iter().filter(|a| r.sub(a, &r.frobenius(a)) == r.zero()).count();
    let image: std::collections::BTreeSet<_> = elems.iter().map(|a| r.sub(a, &r.frobenius(a))).collect();
    assert_eq!(kernel, 2);
    assert_eq!(elems.len() / image.len(), 2);
    assert_eq!(r.frobenius(&r.gen()), w.field.frobenius(&r.gen()));
}

#[test]
fn representations_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for p in [2u64, 3] {
        for n in 1..=3 {
            for m in 1..=4 {
                let w = witt_ring(p, n, m).unwrap();
                let r = &w.quotient;
                for _ in 0..100 {
                    let a = random_vector(&w, &mut rng);
                    let b = random_vector(&w, &mut rng);
                    let (qa, qb) = (w.to_quotient(&a), w.to_quotient(&b));
                    assert_eq!(w.to_quotient(&w.coords.add(&a, &b).unwrap()), r.add(&qa, &qb));
                    assert_eq!(w.to_quotient(&w.coords.mul(&a, &b).unwrap()), r.mul(&qa, &qb));
                    assert_eq!(w.to_quotient(&w.coords.frobenius(&a)), r.frobenius(&qa));
                    assert_eq!(w.to_coords(&qa).unwrap(), a);
                }
            }
        }
    }
}

#[test]
fn coordinates_match_universal_polynomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (p, n, m) in [(2u64, 1usize, 3u32), (2, 2, 3), (3, 1, 3), (3, 2, 2)] {
        let w = witt_ring(p, n, m).unwrap();
        let u = universal_polynomials(p, m).unwrap();
        for _ in 0..50 {
            let a = random_vector(&w, &mut rng);
            let b = random_vector(&w, &mut rng);
            let vals: Vec<Fq> = a.iter().chain(&b).cloned().collect();
            let sum: WittVector = u.sum.iter().map(|s| eval_over_field(s, &vals, &w.field)).collect();
            let prod: WittVector = u.product.iter().map(|s| eval_over_field(s, &vals, &w.field)).collect();
            assert_eq!(w.coords.add(&a, &b).unwrap(), sum);
            assert_eq!(w.coords.mul(&a, &b).unwrap(), prod);
        }
    }
}

#[test]
fn ghost_map_is_additive_and_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (p, m) in [(2u64, 3u32), (3, 3), (5, 2)] {
        let u = universal_polynomials(p, m).unwrap();
        for _ in 0..30 {
            let a: Vec<BigInt> = (0..m).map(|_| BigInt::from(rng.gen_range(-20..20))).collect();
            let b: Vec<BigInt> = (0..m).map(|_| BigInt::from(rng.gen_range(-20..20))).collect();
            let vals: Vec<BigInt> = a.iter().chain(&b).cloned().collect();
            let s: Vec<BigInt> = u.sum.iter().map(|q| q.eval(&vals)).collect();
            let t: Vec<BigInt> = u.product.iter().map(|q| q.eval(&vals)).collect();
            let (ga, gb) = (ghost_components(&a, p), ghost_components(&b, p));
            let gs = ghost_components(&s, p);
            let gt = ghost_components(&t, p);
            for k in 0..m as usize {
                assert_eq!(gs[k], &ga[k] + &gb[k]);
                assert_eq!(gt[k], &ga[k] * &gb[k]);
            }
        }
    }
}

#[test]
fn frobenius_is_a_ring_map_lifting_pth_power() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let w = witt_ring(3, 2, 4).unwrap();
    let r = &w.quotient;
    for _ in 0..100 {
        let a: Vec<u64> = (0..2).map(|_| rng.gen_range(0..r.modulus)).collect();
        let b: Vec<u64> = (0..2).map(|_| rng.gen_range(0..r.modulus)).collect();
        assert_eq!(r.frobenius(&r.mul(&a, &b)), r.mul(&r.frobenius(&a), &r.frobenius(&b)));
        assert_eq!(r.frobenius(&r.add(&a, &b)), r.add(&r.frobenius(&a), &r.frobenius(&b)));
        assert_eq!(r.reduce_mod_p(&r.frobenius(&a)), w.field.frobenius(&r.reduce_mod_p(&a)));
    }
}

#[test]
fn one_minus_f_over_f8() {
    let (k, c) = kernel_cokernel_at(2, 3, 4).unwrap();
    assert_eq!((k.zp_rank, c.zp_rank), (1, 1));
    assert!(k.torsion.is_empty() && c.torsion.is_empty());
}

#[test]
fn perfect_answers_stabilize() {
    for (p, n, m) in [(2u64, 1usize, 5u32), (2, 3, 5), (3, 2, 4)] {
        let r = tcr_perfect_answer(p, n, m).unwrap();
        assert!(r.stabilized);
        assert_eq!((r.kernel.zp_rank, r.cokernel.zp_rank), (1, 1));
        let mk = r.mackey_kernel.unwrap();
        assert_eq!((mk.res.as_str(), mk.tr.as_str()), ("1", "2"));
    }
}
