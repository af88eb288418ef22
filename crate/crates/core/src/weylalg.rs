//! The operator and function substrate: the Weyl algebra of differential
//! operators `sum c x^a d^b` over the PBW variables, and truncated-up formal
//! power series with rational exponents on the simple-root variables.
//!
//! Truncation bookkeeping rests on one observation: for any key of a
//! weighted series, the total integer drop of its simple exponents below the
//! weight line equals the height-weighted degree of its non-simple
//! exponents. That quantity (`hdrop`) is intrinsic to the key, so a series
//! carries a single depth `D` meaning "coefficients with hdrop <= D are
//! exact"; applying an operator moves `D` by the operator's worst per-term
//! shift and never reports an unreliable coefficient as trusted.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::rat::{falling, rat, Rat};
use crate::rootsys::{RootOrder, RootSystem, VarKind, Weight};

// ---------------------------------------------------------------------------
// Differential operators
// ---------------------------------------------------------------------------

/// A normal-ordered monomial `x^a d^b` over the `m` PBW variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpMon {
    pub x: Box<[u16]>,
    pub d: Box<[u16]>,
}

/// Finite sum of monomials `coeff * x^a d^b`, kept in normal order.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffOp {
    pub m: usize,
    pub terms: HashMap<OpMon, Rat>,
}

impl DiffOp {
    pub fn zero(m: usize) -> Self {
        DiffOp {
            m,
            terms: HashMap::new(),
        }
    }

    pub fn constant(m: usize, c: Rat) -> Self {
        let mut op = DiffOp::zero(m);
        op.push(vec![0; m], vec![0; m], c);
        op
    }

    pub fn x_var(m: usize, pos: usize) -> Self {
        let mut a = vec![0u16; m];
        a[pos] = 1;
        let mut op = DiffOp::zero(m);
        op.push(a, vec![0; m], Rat::one());
        op
    }

    pub fn d_var(m: usize, pos: usize) -> Self {
        let mut b = vec![0u16; m];
        b[pos] = 1;
        let mut op = DiffOp::zero(m);
        op.push(vec![0; m], b, Rat::one());
        op
    }

    pub fn push(&mut self, x: Vec<u16>, d: Vec<u16>, c: Rat) {
        if c.is_zero() {
            return;
        }
        let mon = OpMon {
            x: x.into(),
            d: d.into(),
        };
        match self.terms.entry(mon) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        for (mon, c) in &other.terms {
            out.push(mon.x.to_vec(), mon.d.to_vec(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        for (mon, c) in &other.terms {
            out.push(mon.x.to_vec(), mon.d.to_vec(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> DiffOp {
        if c.is_zero() {
            return DiffOp::zero(self.m);
        }
        DiffOp {
            m: self.m,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Normal-ordered product `self . other` (apply `other` first).
    pub fn compose(&self, other: &DiffOp) -> DiffOp {
        let m = self.m;
        let mut out = DiffOp::zero(m);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                // positions where d^{b1} has to cross x^{a2}
                let hot: Vec<usize> = (0..m).filter(|&p| m1.d[p] > 0 && m2.x[p] > 0).collect();
                let mut choices: Vec<(Vec<u16>, Rat)> = vec![(vec![0; hot.len()], c1 * c2)];
                for (slot, &p) in hot.iter().enumerate() {
                    let kmax = m1.d[p].min(m2.x[p]);
                    let mut next = Vec::new();
                    for (t, coef) in &choices {
                        for k in 0..=kmax {
                            let mut t2 = t.clone();
                            t2[slot] = k;
                            let extra =
                                Rat::from_integer(crate::rat::binom(m1.d[p] as u64, k as u64))
                                    * falling(&rat(m2.x[p] as i64), k as u64);
                            next.push((t2, coef * extra));
                        }
                    }
                    choices = next;
                }
                for (t, coef) in choices {
                    if coef.is_zero() {
                        continue;
                    }
                    let mut x = vec![0u16; m];
                    let mut d = vec![0u16; m];
                    for p in 0..m {
                        x[p] = m1.x[p] + m2.x[p];
                        d[p] = m1.d[p] + m2.d[p];
                    }
                    for (slot, &p) in hot.iter().enumerate() {
                        x[p] -= t[slot];
                        d[p] -= t[slot];
                    }
                    out.push(x, d, coef);
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &DiffOp) -> DiffOp {
        self.compose(other).sub(&other.compose(self))
    }

    /// Filtration degree: max over terms of `|a| - |b|`; `None` for zero.
    pub fn fdeg(&self) -> Option<i64> {
        self.terms
            .keys()
            .map(|mon| {
                let a: i64 = mon.x.iter().map(|&v| v as i64).sum();
                let b: i64 = mon.d.iter().map(|&v| v as i64).sum();
                a - b
            })
            .max()
    }

    /// Worst-case depth shift under the intrinsic-drop metric: `min` over
    /// terms of the height-weighted non-simple degree of `a - b`.
    pub fn depth_shift(&self, ord: &RootOrder) -> i64 {
        self.terms
            .keys()
            .map(|mon| {
                let mut s = 0i64;
                for (slot, &p) in ord.rest_pos.iter().enumerate() {
                    s += (mon.x[p] as i64 - mon.d[p] as i64) * ord.rest_ht[slot];
                }
                s
            })
            .min()
            .unwrap_or(0)
    }

    /// Canonical sorted text form.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut keys: Vec<&OpMon> = self.terms.keys().collect();
        keys.sort_by_key(|mon| (mon.x.clone(), mon.d.clone()));
        let mut parts = Vec::new();
        for mon in keys {
            let c = &self.terms[mon];
            let mut s = format!("({c})");
            for (p, &e) in mon.x.iter().enumerate() {
                if e == 1 {
                    s.push_str(&format!(" x{}", p + 1));
                } else if e > 1 {
                    s.push_str(&format!(" x{}^{}", p + 1, e));
                }
            }
            for (p, &e) in mon.d.iter().enumerate() {
                if e == 1 {
                    s.push_str(&format!(" d{}", p + 1));
                } else if e > 1 {
                    s.push_str(&format!(" d{}^{}", p + 1, e));
                }
            }
            parts.push(s);
        }
        parts.join(" + ")
    }
}

// ---------------------------------------------------------------------------
// Truncated-up series
// ---------------------------------------------------------------------------

/// Exponent key of one series term: rational exponents on the simple-root
/// variables (indexed by Delta), natural exponents elsewhere (slot order).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SKey {
    pub s: Box<[Rat]>,
    pub r: Box<[u16]>,
}

impl SKey {
    /// Height-weighted non-simple degree; for a weighted series this is the
    /// total integer drop of the key below its weight line.
    pub fn hdrop(&self, ord: &RootOrder) -> i64 {
        self.r
            .iter()
            .zip(&ord.rest_ht)
            .map(|(&e, &h)| e as i64 * h)
            .sum()
    }

    /// Total degree: sum of all exponents.
    pub fn degree(&self) -> Rat {
        let s: Rat = self.s.iter().cloned().sum();
        s + rat(self.r.iter().map(|&e| e as i64).sum())
    }
}

/// Element of the truncated-up series space. `depth = None` means the stored
/// map is the entire (finite) function; `Some(d)` means coefficients are
/// exact for keys with `hdrop <= d` and unreliable beyond.
#[derive(Debug, Clone)]
pub struct Series {
    pub n: usize,
    pub m: usize,
    pub terms: HashMap<SKey, Rat>,
    pub depth: Option<i64>,
}

impl Series {
    pub fn zero(ord: &RootOrder) -> Self {
        Series {
            n: ord.n,
            m: ord.m,
            terms: HashMap::new(),
            depth: None,
        }
    }

    pub fn one(ord: &RootOrder) -> Self {
        let mut s = Series::zero(ord);
        s.push(
            SKey {
                s: vec![Rat::zero(); ord.n].into(),
                r: vec![0; ord.m - ord.n].into(),
            },
            Rat::one(),
        );
        s
    }

    /// `x_beta` for the root at the given PBW position.
    pub fn var(ord: &RootOrder, pos: usize) -> Self {
        let mut s = vec![Rat::zero(); ord.n];
        let mut r = vec![0u16; ord.m - ord.n];
        match ord.kind[pos] {
            VarKind::Simple(di) => s[di] = Rat::one(),
            VarKind::Rest(slot) => r[slot] = 1,
        }
        Series::monomial(ord, s, r, Rat::one())
    }

    pub fn monomial(ord: &RootOrder, simple: Vec<Rat>, rest: Vec<u16>, coeff: Rat) -> Self {
        let mut s = Series::zero(ord);
        s.push(
            SKey {
                s: simple.into(),
                r: rest.into(),
            },
            coeff,
        );
        s
    }

    pub fn push(&mut self, key: SKey, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Zero on every trusted key (exact zero when the series is exact).
    pub fn is_zero_within_depth(&self, ord: &RootOrder) -> bool {
        match self.depth {
            None => self.terms.is_empty(),
            Some(d) => self.terms.keys().all(|k| k.hdrop(ord) > d),
        }
    }

    pub fn scale(&self, c: &Rat) -> Series {
        if c.is_zero() {
            return Series {
                n: self.n,
                m: self.m,
                terms: HashMap::new(),
                depth: self.depth,
            };
        }
        Series {
            n: self.n,
            m: self.m,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
            depth: self.depth,
        }
    }

    pub fn add(&self, other: &Series) -> Series {
        let mut out = self.clone();
        out.depth = match (self.depth, other.depth) {
            (None, d) | (d, None) => d,
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        for (k, v) in &other.terms {
            out.push(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.add(&other.scale(&-Rat::one()))
    }

    /// Multiply by `coeff * x^simple x^rest`; simple exponents may be any
    /// rationals. Depth is unchanged: the shift is uniform across keys.
    pub fn mul_monomial(&self, simple: &[Rat], rest: &[u16], coeff: &Rat) -> Series {
        let mut out = Series {
            n: self.n,
            m: self.m,
            terms: HashMap::new(),
            depth: self.depth,
        };
        if coeff.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            let s: Vec<Rat> = k.s.iter().zip(simple).map(|(a, b)| a + b).collect();
            let r: Vec<u16> = k.r.iter().zip(rest).map(|(a, b)| a + b).collect();
            out.push(
                SKey {
                    s: s.into(),
                    r: r.into(),
                },
                v * coeff,
            );
        }
        out
    }

    /// Product of two series; exact at the smaller of the two depths.
    pub fn mul(&self, other: &Series) -> Series {
        let depth = match (self.depth, other.depth) {
            (None, d) | (d, None) => d,
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        let mut out = Series {
            n: self.n,
            m: self.m,
            terms: HashMap::new(),
            depth,
        };
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let s: Vec<Rat> = ka.s.iter().zip(kb.s.iter()).map(|(x, y)| x + y).collect();
                let r: Vec<u16> = ka.r.iter().zip(kb.r.iter()).map(|(x, y)| x + y).collect();
                out.push(
                    SKey {
                        s: s.into(),
                        r: r.into(),
                    },
                    ca * cb,
                );
            }
        }
        out
    }

    /// Apply a differential operator. Exact on polynomials; on truncated
    /// series the depth moves by the operator's depth shift and untrusted
    /// result keys are discarded.
    pub fn apply(&self, op: &DiffOp, ord: &RootOrder) -> Result<Series, Error> {
        let new_depth = match self.depth {
            None => None,
            Some(d) => {
                let nd = d + op.depth_shift(ord);
                if nd < 0 {
                    return Err(Error::DepthExhausted(format!(
                        "depth {d} exhausted by operator shift {}",
                        op.depth_shift(ord)
                    )));
                }
                Some(nd)
            }
        };
        let mut out = Series {
            n: self.n,
            m: self.m,
            terms: HashMap::new(),
            depth: new_depth,
        };
        for (key, c) in &self.terms {
            'terms: for (mon, oc) in &op.terms {
                let mut factor = c * oc;
                let mut s = key.s.to_vec();
                let mut r = key.r.to_vec();
                for p in 0..self.m {
                    let bb = mon.d[p];
                    if bb == 0 {
                        continue;
                    }
                    match ord.kind[p] {
                        VarKind::Simple(di) => {
                            factor *= falling(&s[di], bb as u64);
                            if factor.is_zero() {
                                continue 'terms;
                            }
                            s[di] -= rat(bb as i64);
                        }
                        VarKind::Rest(slot) => {
                            if (r[slot] as i64) < bb as i64 {
                                continue 'terms;
                            }
                            factor *= falling(&rat(r[slot] as i64), bb as u64);
                            r[slot] -= bb;
                        }
                    }
                }
                for p in 0..self.m {
                    let aa = mon.x[p];
                    if aa == 0 {
                        continue;
                    }
                    match ord.kind[p] {
                        VarKind::Simple(di) => s[di] += rat(aa as i64),
                        VarKind::Rest(slot) => r[slot] += aa,
                    }
                }
                let nk = SKey {
                    s: s.into(),
                    r: r.into(),
                };
                if let Some(d) = new_depth {
                    if nk.hdrop(ord) > d {
                        continue;
                    }
                }
                out.push(nk, factor);
            }
        }
        Ok(out)
    }

    /// Drop stored keys beyond the trusted depth (or a tighter bound).
    pub fn pruned(&self, ord: &RootOrder, bound: Option<i64>) -> Series {
        let limit = match (self.depth, bound) {
            (None, None) => return self.clone(),
            (Some(d), None) => d,
            (None, Some(b)) => b,
            (Some(d), Some(b)) => d.min(b),
        };
        Series {
            n: self.n,
            m: self.m,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.hdrop(ord) <= limit)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
            depth: Some(self.depth.map_or(limit, |d| d.min(limit))),
        }
    }

    /// Exact equality of the commonly trusted parts of two series.
    pub fn eq_within_depth(&self, other: &Series, ord: &RootOrder) -> bool {
        let bound = match (self.depth, other.depth) {
            (None, None) => None,
            (Some(a), None) => Some(a),
            (None, Some(b)) => Some(b),
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        let a = self.pruned(ord, bound);
        let b = other.pruned(ord, bound);
        a.terms == b.terms
    }

    /// Weight of one key relative to lambda.
    pub fn key_weight(key: &SKey, rs: &RootSystem, ord: &RootOrder, lambda: &Weight) -> Weight {
        let mut c = lambda.c.clone();
        for (di, e) in key.s.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let id = ord.root_id(ord.delta_pos[di]);
            for j in 0..rs.rank {
                c[j] -= e * rat(rs.roots[id].pairings[j]);
            }
        }
        for (slot, &e) in key.r.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let id = ord.root_id(ord.rest_pos[slot]);
            for j in 0..rs.rank {
                c[j] -= rat(e as i64) * rat(rs.roots[id].pairings[j]);
            }
        }
        Weight { c }
    }

    /// The common weight of all terms, if there is one.
    pub fn weight_of(&self, rs: &RootSystem, ord: &RootOrder, lambda: &Weight) -> Option<Weight> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let w = Series::key_weight(first, rs, ord, lambda);
        for k in it {
            if Series::key_weight(k, rs, ord, lambda) != w {
                return None;
            }
        }
        Some(w)
    }

    /// Split into weighted components, sorted by weight for determinism.
    pub fn weight_components(
        &self,
        rs: &RootSystem,
        ord: &RootOrder,
        lambda: &Weight,
    ) -> Vec<(Weight, Series)> {
        let mut map: HashMap<Vec<Rat>, Series> = HashMap::new();
        for (k, v) in &self.terms {
            let w = Series::key_weight(k, rs, ord, lambda);
            map.entry(w.c.clone())
                .or_insert_with(|| Series {
                    n: self.n,
                    m: self.m,
                    terms: HashMap::new(),
                    depth: self.depth,
                })
                .push(k.clone(), v.clone());
        }
        let mut out: Vec<(Weight, Series)> =
            map.into_iter().map(|(c, s)| (Weight { c }, s)).collect();
        out.sort_by(|a, b| a.0.c.cmp(&b.0.c));
        out
    }

    /// Sum of the maximal-degree terms of a weighted series.
    pub fn leading_term(&self, ord: &RootOrder) -> Result<Series, Error> {
        if self.terms.is_empty() {
            return Err(Error::Precondition("leading term of zero".into()));
        }
        let _ = ord;
        let deg = self.terms.keys().map(|k| k.degree()).max().unwrap();
        let mut out = Series {
            n: self.n,
            m: self.m,
            terms: HashMap::new(),
            depth: self.depth,
        };
        for (k, v) in &self.terms {
            if k.degree() == deg {
                out.push(k.clone(), v.clone());
            }
        }
        Ok(out)
    }

    pub fn degree(&self) -> Option<Rat> {
        self.terms.keys().map(|k| k.degree()).max()
    }

    /// All simple exponents natural (polynomial in the stored window).
    pub fn is_polynomial_window(&self) -> bool {
        self.terms
            .keys()
            .all(|k| k.s.iter().all(crate::rat::is_nat))
    }

    /// Canonical sorted text form; variables named by PBW position.
    pub fn to_text(&self, ord: &RootOrder) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut keys: Vec<&SKey> = self.terms.keys().collect();
        keys.sort_by(|a, b| (a.hdrop(ord), &a.s, &a.r).cmp(&(b.hdrop(ord), &b.s, &b.r)));
        let mut parts = Vec::new();
        for k in keys {
            let c = &self.terms[k];
            let mut s = format!("({c})");
            for (di, e) in k.s.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                let pos = ord.delta_pos[di] + 1;
                if e.is_one() {
                    s.push_str(&format!(" x{pos}"));
                } else {
                    s.push_str(&format!(" x{pos}^({e})"));
                }
            }
            for (slot, &e) in k.r.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pos = ord.rest_pos[slot] + 1;
                if e == 1 {
                    s.push_str(&format!(" x{pos}"));
                } else {
                    s.push_str(&format!(" x{pos}^{e}"));
                }
            }
            parts.push(s);
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;
    use crate::rootsys::{build_root_system, lex_ordering, CartanType};

    fn setup() -> (RootSystem, RootOrder) {
        let rs = build_root_system(CartanType::A, 2).unwrap();
        let ord = lex_ordering(&rs);
        (rs, ord)
    }

    #[test]
    fn monomial_rule_rational_exponent() {
        let (_, ord) = setup();
        let pos = ord.delta_pos[0];
        let c = ratio(5, 3);
        let f = Series::monomial(&ord, vec![c.clone(), Rat::zero()], vec![0], Rat::one());
        let d = DiffOp::d_var(3, pos);
        let g = f.apply(&d, &ord).unwrap();
        assert_eq!(g.terms.len(), 1);
        let (k, v) = g.terms.iter().next().unwrap();
        assert_eq!(v, &c);
        assert_eq!(k.s[0], &c - Rat::one());
    }

    #[test]
    fn weyl_relation_is_identity() {
        let (_, ord) = setup();
        let pos = ord.delta_pos[1];
        let comm = DiffOp::d_var(3, pos).commutator(&DiffOp::x_var(3, pos));
        assert_eq!(comm, DiffOp::constant(3, Rat::one()));
        let other = ord.delta_pos[0];
        let comm2 = DiffOp::d_var(3, pos).commutator(&DiffOp::x_var(3, other));
        assert!(comm2.is_zero());
    }

    #[test]
    fn euler_operator() {
        let (_, ord) = setup();
        let pos = ord.rest_pos[0];
        let euler = DiffOp::x_var(3, pos).compose(&DiffOp::d_var(3, pos));
        let f = Series::monomial(&ord, vec![Rat::zero(); 2], vec![4], Rat::one());
        let g = f.apply(&euler, &ord).unwrap();
        let (_, v) = g.terms.iter().next().unwrap();
        assert_eq!(v, &rat(4));
        let x = DiffOp::x_var(3, pos);
        assert_eq!(euler.commutator(&x), x);
    }

    #[test]
    fn filtration_degrees_compose() {
        let up = DiffOp::x_var(3, 0); // A^1
        let down = DiffOp::d_var(3, 1); // A^{-1}
        assert_eq!(up.fdeg(), Some(1));
        assert_eq!(down.fdeg(), Some(-1));
        assert!(up.compose(&down).fdeg().unwrap() <= 0);
    }

    #[test]
    fn compose_matches_sequential_apply() {
        let (_, ord) = setup();
        let p0 = ord.delta_pos[0];
        let p1 = ord.rest_pos[0];
        let op1 = DiffOp::x_var(3, p1).compose(&DiffOp::d_var(3, p0));
        let op2 = DiffOp::d_var(3, p1)
            .compose(&DiffOp::d_var(3, p0))
            .add(&DiffOp::x_var(3, p0));
        let f = Series::monomial(&ord, vec![ratio(7, 2), rat(3)], vec![2], ratio(5, 4));
        let lhs = f.apply(&op1.compose(&op2), &ord).unwrap();
        let rhs = f.apply(&op2, &ord).unwrap().apply(&op1, &ord).unwrap();
        assert_eq!(lhs.terms, rhs.terms);
    }

    #[test]
    fn leading_term_and_degree() {
        let (_, ord) = setup();
        let mut f = Series::zero(&ord);
        f.push(
            SKey {
                s: vec![rat(2), Rat::zero()].into(),
                r: vec![0].into(),
            },
            Rat::one(),
        );
        f.push(
            SKey {
                s: vec![Rat::zero(); 2].into(),
                r: vec![1].into(),
            },
            Rat::one(),
        );
        let t = f.leading_term(&ord).unwrap();
        assert_eq!(t.terms.len(), 1);
        assert_eq!(t.terms.keys().next().unwrap().s[0], rat(2));
        let g = Series::monomial(&ord, vec![ratio(5, 7), Rat::zero()], vec![0], rat(2));
        assert_eq!(g.leading_term(&ord).unwrap().terms, g.terms);
    }

    #[test]
    fn weight_bookkeeping() {
        let (rs, ord) = setup();
        let lam = Weight::new(vec![ratio(1, 2), rat(3)]);
        let one = Series::one(&ord);
        assert_eq!(one.weight_of(&rs, &ord, &lam), Some(lam.clone()));
        let xb = Series::var(&ord, ord.rest_pos[0]);
        let w = xb.weight_of(&rs, &ord, &lam).unwrap();
        let id = ord.root_id(ord.rest_pos[0]);
        let expect = Weight::new(
            (0..2)
                .map(|j| &lam.c[j] - rat(rs.roots[id].pairings[j]))
                .collect(),
        );
        assert_eq!(w, expect);
        let mix = xb.add(&Series::var(&ord, ord.delta_pos[0]));
        assert_eq!(mix.weight_of(&rs, &ord, &lam), None);
        assert_eq!(mix.weight_components(&rs, &ord, &lam).len(), 2);
    }

    #[test]
    fn leading_term_is_multiplicative() {
        let (rs, ord) = setup();
        let lam = Weight::new(vec![rat(2), rat(3)]);
        // weighted polynomials: components of fixed weight
        let mk = |simple: Vec<i64>, rest: Vec<u16>, c: Rat| {
            Series::monomial(&ord, simple.into_iter().map(rat).collect(), rest, c)
        };
        // f = x_{a1} x_{a2} + x_theta (weight lambda - theta), g = x_{a1}^2
        let f = mk(vec![1, 1], vec![0], rat(2)).add(&mk(vec![0, 0], vec![1], rat(5)));
        let g = mk(vec![2, 0], vec![0], ratio(1, 3));
        assert!(f.weight_of(&rs, &ord, &lam).is_some());
        let lhs = f.mul(&g).leading_term(&ord).unwrap();
        let rhs = f
            .leading_term(&ord)
            .unwrap()
            .mul(&g.leading_term(&ord).unwrap());
        assert_eq!(lhs.terms, rhs.terms);
    }

    #[test]
    fn depth_gates_apply() {
        let (_, ord) = setup();
        let mut f = Series::one(&ord);
        f.depth = Some(0);
        // d on the non-simple variable has shift -2 (height-2 root)
        let d = DiffOp::d_var(3, ord.rest_pos[0]);
        assert!(f.apply(&d, &ord).is_err());
        let x = DiffOp::x_var(3, ord.rest_pos[0]);
        let g = f.apply(&x, &ord).unwrap();
        assert_eq!(g.depth, Some(2));
    }
}
