//! Independent brute-force verification: straightening of words in the
//! Chevalley generators acting on the highest weight vector, and kernels of
//! the raising operators on weight spaces. This path never touches the
//! differential-operator machinery, so agreement between the two is a real
//! cross-check.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::chevalley::{neg, pos, root_id, ssum, StructureConstants};
use crate::error::Error;
use crate::liediff::LieOps;
use crate::linalg::kernel_rat;
use crate::rat::{rat, Rat};
use crate::rootsys::{alpha_coords_of_diff, RootOrder, RootSystem, Weight};
use crate::singvec::{tau, tau_inv, PbwVector};
use crate::weylalg::Series;

/// One generator of a free word: a raising or lowering root vector, or a
/// simple Cartan element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gen {
    /// `E_{-beta}` for the positive root id.
    Lower(usize),
    /// `E_{beta}` for the positive root id.
    Raise(usize),
    /// `H_{alpha_i}` for the simple index.
    Cartan(usize),
}

/// A word `g_1 g_2 ... g_k` acting as `g_1(g_2(...(g_k(v))))`.
pub type FreeLieWord = Vec<Gen>;

/// Straightening engine for a fixed highest weight.
pub struct Straightener<'a> {
    pub rs: &'a RootSystem,
    pub ord: &'a RootOrder,
    pub sc: &'a StructureConstants,
    pub lambda: Weight,
    lower_memo: HashMap<(usize, Box<[u16]>), PbwVector>,
    raise_memo: HashMap<(usize, Box<[u16]>), PbwVector>,
}

impl<'a> Straightener<'a> {
    pub fn new(
        rs: &'a RootSystem,
        ord: &'a RootOrder,
        sc: &'a StructureConstants,
        lambda: Weight,
    ) -> Self {
        Straightener {
            rs,
            ord,
            sc,
            lambda,
            lower_memo: HashMap::new(),
            raise_memo: HashMap::new(),
        }
    }

    fn first_support(a: &[u16]) -> Option<usize> {
        a.iter().position(|&e| e > 0)
    }

    /// `E_{-beta} E^a v_lambda` in the PBW basis.
    pub fn act_lower(&mut self, beta: usize, a: &[u16]) -> PbwVector {
        let bpos = self.ord.pos_of[beta];
        let place_at = Straightener::first_support(a).unwrap_or(self.rs.m);
        if bpos <= place_at {
            let mut exps = a.to_vec();
            exps[bpos] += 1;
            let mut v = PbwVector::zero(self.rs.m);
            v.push(exps, Rat::one());
            return v;
        }
        let key = (beta, a.to_vec().into_boxed_slice());
        if let Some(v) = self.lower_memo.get(&key) {
            return v.clone();
        }
        let p0 = place_at;
        let gamma = self.ord.root_id(p0);
        let mut rest = a.to_vec();
        rest[p0] -= 1;
        // E_{-beta} E_{-gamma} = E_{-gamma} E_{-beta} + N_{-beta,-gamma} E_{-(beta+gamma)}
        let swapped = self.act_lower(beta, &rest);
        let mut out = PbwVector::zero(self.rs.m);
        for (mon, c) in swapped.coeffs {
            let prep = self.act_lower(gamma, &mon);
            for (m2, c2) in prep.coeffs {
                out.push(m2.to_vec(), &c * &c2);
            }
        }
        if let Some(s) = ssum(self.rs, neg(beta), neg(gamma)) {
            debug_assert!(s < 0);
            let coef = rat(self.sc.n(neg(beta), neg(gamma)));
            let corr = self.act_lower(root_id(s), &rest);
            for (m2, c2) in corr.coeffs {
                out.push(m2.to_vec(), &coef * &c2);
            }
        }
        self.lower_memo.insert(key, out.clone());
        out
    }

    /// Eigenvalue of `H = sum c_i H_{alpha_i}` on `E^a v_lambda`.
    fn cartan_eigenvalue(&self, h: &[Rat], a: &[u16]) -> Rat {
        let mut acc: Rat = h.iter().zip(&self.lambda.c).map(|(c, l)| c * l).sum();
        for (p, &e) in a.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let id = self.ord.root_id(p);
            for (i, c) in h.iter().enumerate() {
                acc -= rat(e as i64) * c * rat(self.rs.roots[id].pairings[i]);
            }
        }
        acc
    }

    /// `E_beta E^a v_lambda` in the PBW basis.
    pub fn act_raise(&mut self, beta: usize, a: &[u16]) -> PbwVector {
        let Some(p0) = Straightener::first_support(a) else {
            return PbwVector::zero(self.rs.m); // E_beta v_lambda = 0
        };
        let key = (beta, a.to_vec().into_boxed_slice());
        if let Some(v) = self.raise_memo.get(&key) {
            return v.clone();
        }
        let gamma = self.ord.root_id(p0);
        let mut rest = a.to_vec();
        rest[p0] -= 1;
        // main part: E_{-gamma} (E_beta E^rest)
        let main = self.act_raise(beta, &rest);
        let mut out = PbwVector::zero(self.rs.m);
        for (mon, c) in main.coeffs {
            let prep = self.act_lower(gamma, &mon);
            for (m2, c2) in prep.coeffs {
                out.push(m2.to_vec(), &c * &c2);
            }
        }
        // bracket part: [E_beta, E_{-gamma}] E^rest
        if beta == gamma {
            let h: Vec<Rat> = self.rs.roots[beta]
                .coroot_coords
                .iter()
                .map(|&k| rat(k))
                .collect();
            let ev = self.cartan_eigenvalue(&h, &rest);
            out.push(rest.clone(), ev);
        } else if let Some(s) = ssum(self.rs, pos(beta), neg(gamma)) {
            let coef = rat(self.sc.n(pos(beta), neg(gamma)));
            let corr = if s > 0 {
                self.act_raise(root_id(s), &rest)
            } else {
                self.act_lower(root_id(s), &rest)
            };
            for (m2, c2) in corr.coeffs {
                out.push(m2.to_vec(), &coef * &c2);
            }
        }
        self.raise_memo.insert(key, out.clone());
        out
    }

    /// Apply one generator to a PBW vector.
    pub fn apply_gen(&mut self, g: Gen, v: &PbwVector) -> PbwVector {
        let mut out = PbwVector::zero(self.rs.m);
        for (mon, c) in &v.coeffs {
            match g {
                Gen::Lower(beta) => {
                    let r = self.act_lower(beta, mon);
                    for (m2, c2) in r.coeffs {
                        out.push(m2.to_vec(), c * &c2);
                    }
                }
                Gen::Raise(beta) => {
                    let r = self.act_raise(beta, mon);
                    for (m2, c2) in r.coeffs {
                        out.push(m2.to_vec(), c * &c2);
                    }
                }
                Gen::Cartan(i) => {
                    let mut h = vec![Rat::zero(); self.rs.rank];
                    h[i] = Rat::one();
                    let ev = self.cartan_eigenvalue(&h, mon);
                    out.push(mon.to_vec(), c * ev);
                }
            }
        }
        out
    }

    /// Apply a word, rightmost generator first.
    pub fn apply_word(&mut self, word: &FreeLieWord, v: &PbwVector) -> PbwVector {
        let mut cur = v.clone();
        for &g in word.iter().rev() {
            cur = self.apply_gen(g, &cur);
        }
        cur
    }

    /// `straighten(word) = word . v_lambda`.
    pub fn straighten(&mut self, word: &FreeLieWord) -> PbwVector {
        self.apply_word(word, &PbwVector::highest(self.rs.m))
    }
}

/// Basis monomials of the weight space `lambda - sum z_i alpha_i`, as
/// exponent tuples over the PBW positions.
pub fn weight_basis(rs: &RootSystem, ord: &RootOrder, z: &[i64]) -> Vec<Vec<u16>> {
    if z.iter().any(|&v| v < 0) {
        return Vec::new();
    }
    let m = rs.m;
    let budget: i64 = z.iter().sum();
    let coords: Vec<Vec<i64>> = (0..m)
        .map(|p| rs.roots[ord.root_id(p)].coords.clone())
        .collect();
    let heights: Vec<i64> = (0..m).map(|p| rs.roots[ord.root_id(p)].height).collect();
    let mut out = Vec::new();
    let mut cur = vec![0u16; m];
    fn dfs(
        p: usize,
        rem: &mut Vec<i64>,
        budget: i64,
        cur: &mut Vec<u16>,
        coords: &[Vec<i64>],
        heights: &[i64],
        out: &mut Vec<Vec<u16>>,
    ) {
        if p == coords.len() {
            if budget == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut emax = budget / heights[p];
        for (i, &c) in coords[p].iter().enumerate() {
            if c > 0 {
                emax = emax.min(rem[i] / c);
            }
        }
        for e in 0..=emax {
            if e > 0 {
                for (r, c) in rem.iter_mut().zip(&coords[p]) {
                    *r -= c;
                }
            }
            cur[p] = e as u16;
            dfs(
                p + 1,
                rem,
                budget - e * heights[p],
                cur,
                coords,
                heights,
                out,
            );
        }
        for (r, c) in rem.iter_mut().zip(&coords[p]) {
            *r += emax * c;
        }
        cur[p] = 0;
    }
    let mut rem = z.to_vec();
    dfs(0, &mut rem, budget, &mut cur, &coords, &heights, &mut out);
    out.sort();
    out
}

/// Basis of the intersection of the kernels of all simple raising operators
/// on the weight-mu subspace of the Verma module of weight lambda, by exact
/// rational elimination.
pub fn singular_kernel(
    rs: &RootSystem,
    ord: &RootOrder,
    sc: &StructureConstants,
    lambda: &Weight,
    mu: &Weight,
) -> Vec<PbwVector> {
    let Some(z) = alpha_coords_of_diff(rs, lambda, mu) else {
        return Vec::new();
    };
    if z.iter().any(|&v| v < 0) {
        return Vec::new();
    }
    let cols = weight_basis(rs, ord, &z);
    if cols.is_empty() {
        return Vec::new();
    }
    let mut st = Straightener::new(rs, ord, sc, lambda.clone());
    let simple_ids = rs.simple_ids();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (di, &alpha) in simple_ids.iter().enumerate() {
        let mut zt = z.clone();
        zt[di] -= 1;
        let targets = weight_basis(rs, ord, &zt);
        if targets.is_empty() {
            continue;
        }
        let tgt_index: HashMap<Box<[u16]>, usize> = targets
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone().into_boxed_slice(), i))
            .collect();
        let mut block = vec![vec![Rat::zero(); cols.len()]; targets.len()];
        for (ci, colmon) in cols.iter().enumerate() {
            let image = st.act_raise(alpha, colmon);
            for (mon, c) in image.coeffs {
                let ti = tgt_index[&mon];
                block[ti][ci] = c;
            }
        }
        rows.extend(block);
    }
    let kernel = kernel_rat(&rows, cols.len());
    kernel
        .into_iter()
        .map(|coeffs| {
            let mut v = PbwVector::zero(rs.m);
            for (ci, c) in coeffs.into_iter().enumerate() {
                if !c.is_zero() {
                    v.push(cols[ci].clone(), c);
                }
            }
            v.normalized()
        })
        .collect()
}

/// The master equivalence: applying a word through the differential-operator
/// realization agrees with independent straightening, `u(f) = tau(u(tau^{-1} f))`.
pub fn tau_apply_check(
    ord: &RootOrder,
    ops: &LieOps,
    st: &mut Straightener,
    word: &FreeLieWord,
    f: &Series,
) -> Result<bool, Error> {
    if !f.is_polynomial_window() || f.depth.is_some() {
        return Err(Error::Precondition(
            "tau check needs an exact polynomial".into(),
        ));
    }
    // operator route
    let mut lhs = f.clone();
    for &g in word.iter().rev() {
        let op = match g {
            Gen::Lower(beta) => &ops.eta[ord.pos_of[beta]],
            Gen::Raise(beta) => &ops.d[ord.pos_of[beta]],
            Gen::Cartan(i) => &ops.zeta[i],
        };
        lhs = lhs.apply(op, ord)?;
    }
    // straightening route
    let v = tau_inv(f, ord)?;
    let rhs = tau(&st.apply_word(word, &v), ord);
    Ok(lhs.eq_within_depth(&rhs, ord))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::compute_constants;
    use crate::liediff::build_ops;
    use crate::rat::ratio;
    use crate::rootsys::{
        build_root_system, dot_action, enumerate_weyl, lex_ordering, strongly_linked, CartanType,
        WeylWord,
    };
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn basic_straightening_values() {
        let rs = build_root_system(CartanType::A, 1).unwrap();
        let ord = lex_ordering(&rs);
        let sc = compute_constants(&rs).unwrap();
        let lam = Weight::new(vec![ratio(7, 3)]);
        let mut st = Straightener::new(&rs, &ord, &sc, lam);
        // E_{-a} v = E^1 v
        let v = st.straighten(&vec![Gen::Lower(0)]);
        assert_eq!(v.coeffs.len(), 1);
        assert!(v.coeffs[[1u16].as_slice()].is_one());
        // E_a E_{-a} v = <lam, a^vee> v
        let v = st.straighten(&vec![Gen::Raise(0), Gen::Lower(0)]);
        assert_eq!(v.coeffs[[0u16].as_slice()], ratio(7, 3));
        // E_a E_{-a}^k v = k(<lam,a^vee> - k + 1) E^{k-1} v
        for k in 1u16..6 {
            let mut word = vec![Gen::Raise(0)];
            word.extend(std::iter::repeat(Gen::Lower(0)).take(k as usize));
            let v = st.straighten(&word);
            let expect = rat(k as i64) * (ratio(7, 3) - rat(k as i64 - 1));
            assert_eq!(v.coeffs[vec![k - 1].as_slice()], expect, "k={k}");
        }
    }

    #[test]
    fn cartan_action() {
        let rs = build_root_system(CartanType::A, 2).unwrap();
        let ord = lex_ordering(&rs);
        let sc = compute_constants(&rs).unwrap();
        let lam = Weight::new(vec![rat(2), ratio(1, 2)]);
        let mut st = Straightener::new(&rs, &ord, &sc, lam.clone());
        let v = st.straighten(&vec![Gen::Cartan(0), Gen::Lower(1)]);
        // weight of E_{-beta} v is lam - beta; eigenvalue <lam - beta, a1^vee>
        let beta = ord.root_id(ord.pos_of[1]);
        let _ = beta;
        let id = 1; // root id 1
        let expect = &lam.c[0] - rat(rs.roots[id].pairings[0]);
        let (_, c) = v.coeffs.iter().next().unwrap();
        assert_eq!(c, &expect);
    }

    #[test]
    fn weight_basis_enumeration() {
        let rs = build_root_system(CartanType::A, 2).unwrap();
        let ord = lex_ordering(&rs);
        // weight space of lambda - (a1 + a2): monomials E_{-a1}E_{-a2} and E_{-theta}
        let basis = weight_basis(&rs, &ord, &[1, 1]);
        assert_eq!(basis.len(), 2);
        assert!(weight_basis(&rs, &ord, &[-1, 0]).is_empty());
        assert_eq!(weight_basis(&rs, &ord, &[0, 0]), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn kernel_trivial_cases() {
        let rs = build_root_system(CartanType::A, 1).unwrap();
        let ord = lex_ordering(&rs);
        let sc = compute_constants(&rs).unwrap();
        // mu = lambda: span of v_lambda
        let lam = Weight::new(vec![ratio(2, 5)]);
        let k = singular_kernel(&rs, &ord, &sc, &lam, &lam);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], PbwVector::highest(1));
        // classical sl(2): <lam+rho, a^vee> = k gives E^k v
        let lam = Weight::new(vec![rat(3)]); // k = 4
        let mu = Weight::new(vec![rat(-5)]);
        let kern = singular_kernel(&rs, &ord, &sc, &lam, &mu);
        assert_eq!(kern.len(), 1);
        assert!(kern[0].coeffs[[4u16].as_slice()].is_one());
        // non-integer drop: empty
        let mu = Weight::new(vec![ratio(1, 2)]);
        assert!(singular_kernel(&rs, &ord, &sc, &lam, &mu).is_empty());
    }

    #[test]
    fn a2_zero_weight_full_orbit() {
        let rs = build_root_system(CartanType::A, 2).unwrap();
        let ord = lex_ordering(&rs);
        let sc = compute_constants(&rs).unwrap();
        let lam = Weight::new(vec![rat(0), rat(0)]);
        for w in enumerate_weyl(&rs, 100).unwrap() {
            let mu = dot_action(&rs, &w, &lam);
            let kern = singular_kernel(&rs, &ord, &sc, &lam, &mu);
            assert_eq!(kern.len(), 1, "kernel at {w}");
            let linked = strongly_linked(&rs, &lam, &mu).is_some();
            assert!(linked, "full Bruhat order at lambda = 0");
        }
    }

    #[test]
    fn kernel_matches_linkage_on_a_sweep() {
        let rs = build_root_system(CartanType::B, 2).unwrap();
        let ord = lex_ordering(&rs);
        let sc = compute_constants(&rs).unwrap();
        let lams = vec![
            Weight::new(vec![rat(1), rat(0)]),
            Weight::new(vec![ratio(1, 2), rat(-1)]),
            Weight::new(vec![rat(-1), rat(1)]),
        ];
        for lam in lams {
            for z1 in 0..=4i64 {
                for z2 in 0..=4i64 {
                    let mu = Weight::new(vec![
                        &lam.c[0] - rat(2 * z1 - 2 * z2),
                        &lam.c[1] - rat(2 * z2 - z1),
                    ]);
                    // mu = lam - z1 a1 - z2 a2 in coroot coordinates
                    let kern = singular_kernel(&rs, &ord, &sc, &lam, &mu);
                    assert!(kern.len() <= 1, "dim <= 1");
                    let linked = strongly_linked(&rs, &lam, &mu).is_some();
                    assert_eq!(kern.is_empty(), !linked, "lam={:?} z=({z1},{z2})", lam.c);
                }
            }
        }
    }

    #[test]
    fn tau_check_trivial_words() {
        let rs = build_root_system(CartanType::C, 2).unwrap();
        let ord = crate::rootsys::sp_ordering(&rs).unwrap();
        let sc = compute_constants(&rs).unwrap();
        let lam = Weight::new(vec![ratio(3, 4), ratio(-2, 7)]);
        let ops = build_ops(&rs, &ord, &sc, &lam).unwrap();
        let mut st = Straightener::new(&rs, &ord, &sc, lam.clone());
        let one = Series::one(&ord);
        // u = E_{-beta}: both sides x_beta
        for beta in 0..rs.m {
            assert!(tau_apply_check(&ord, &ops, &mut st, &vec![Gen::Lower(beta)], &one).unwrap());
        }
        // u = H_alpha on a weighted f
        let f = Series::var(&ord, ord.rest_pos[1]);
        for i in 0..2 {
            assert!(tau_apply_check(&ord, &ops, &mut st, &vec![Gen::Cartan(i)], &f).unwrap());
        }
    }

    #[test]
    fn tau_check_random_words() {
        let mut rng = StdRng::seed_from_u64(7);
        for (t, n) in [(CartanType::A, 2), (CartanType::C, 2), (CartanType::G, 2)] {
            let rs = build_root_system(t, n).unwrap();
            let ord = lex_ordering(&rs);
            let sc = compute_constants(&rs).unwrap();
            let lam = Weight::new(vec![ratio(3, 4), ratio(-2, 7)]);
            let ops = build_ops(&rs, &ord, &sc, &lam).unwrap();
            let mut st = Straightener::new(&rs, &ord, &sc, lam.clone());
            for _ in 0..40 {
                let len = rng.gen_range(1..=3);
                let word: FreeLieWord = (0..len)
                    .map(|_| match rng.gen_range(0..3) {
                        0 => Gen::Lower(rng.gen_range(0..rs.m)),
                        1 => Gen::Raise(rng.gen_range(0..rs.m)),
                        _ => Gen::Cartan(rng.gen_range(0..rs.rank)),
                    })
                    .collect();
                // random polynomial with a couple of monomials
                let mut f = Series::zero(&ord);
                for _ in 0..rng.gen_range(1..=3) {
                    let mut s = vec![Rat::zero(); ord.n];
                    let mut r = vec![0u16; ord.m - ord.n];
                    for v in s.iter_mut() {
                        *v = rat(rng.gen_range(0..3));
                    }
                    for v in r.iter_mut() {
                        *v = rng.gen_range(0..2);
                    }
                    f.push(
                        crate::weylalg::SKey {
                            s: s.into(),
                            r: r.into(),
                        },
                        ratio(rng.gen_range(1..5), rng.gen_range(1..4)),
                    );
                }
                assert!(
                    tau_apply_check(&ord, &ops, &mut st, &word, &f).unwrap(),
                    "{t}{n} word {word:?}"
                );
            }
        }
    }
}
