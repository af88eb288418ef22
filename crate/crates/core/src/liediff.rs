//! Concrete differential operators for the Lie algebra action: zeta (Cartan),
//! eta (lowering), d (raising), built by straightening recursions over the
//! chosen PBW ordering; good-ordering certification; and the falling-factorial
//! power series realizing `eta_alpha^c` for arbitrary rational `c`.

use num_traits::{One, Zero};

use crate::chevalley::{neg, pos, ssum, StructureConstants};
use crate::error::Error;
use crate::rat::{as_nat, factorial, falling, rat, Rat};
use crate::rootsys::{RootOrder, RootSystem, Weight};
use crate::weylalg::{DiffOp, Series};

/// `eta(beta, cut)` for every positive root and every cut `0..=m`:
/// the operator inserting `E_{-beta}` after the first `cut` PBW blocks.
pub struct EtaTable {
    /// Indexed `[position of beta][cut]`.
    pub tab: Vec<Vec<DiffOp>>,
}

/// The coefficient of the `j`-fold ad-correction when `E_{-gamma}` crosses
/// `E_{-beta}`: `(1/j!) * prod_t N_{-gamma, -(beta + t gamma)}`.
fn eta_coeff(
    rs: &RootSystem,
    sc: &StructureConstants,
    beta: usize,
    gamma: usize,
    j: u64,
) -> (Option<usize>, Rat) {
    let mut acc = Rat::one();
    let mut cur = pos(beta);
    for _ in 0..j {
        let Some(next) = ssum(rs, cur, pos(gamma)) else {
            return (None, Rat::zero());
        };
        acc *= rat(sc.n(neg(gamma), -cur));
        cur = next;
    }
    if acc.is_zero() {
        return (None, Rat::zero());
    }
    (Some(crate::chevalley::root_id(cur)), acc / factorial(j))
}

/// Like `eta_coeff` but for a raising generator crossing a lowering block:
/// `(1/j!) * prod_t N_{-gamma, beta - t gamma}` with target `j gamma - beta`.
fn d_coeff(
    rs: &RootSystem,
    sc: &StructureConstants,
    beta: usize,
    gamma: usize,
    j: u64,
) -> (Option<usize>, Rat) {
    let mut acc = Rat::one();
    let mut cur = pos(beta);
    for _ in 0..j {
        let Some(next) = ssum(rs, cur, neg(gamma)) else {
            return (None, Rat::zero());
        };
        acc *= rat(sc.n(neg(gamma), cur));
        cur = next;
    }
    if acc.is_zero() || cur > 0 {
        return (None, Rat::zero());
    }
    (Some(crate::chevalley::root_id(cur)), acc / factorial(j))
}

/// Build the full `eta(beta, cut)` table by downward induction on height.
pub fn build_eta_table(rs: &RootSystem, ord: &RootOrder, sc: &StructureConstants) -> EtaTable {
    let m = rs.m;
    let mut tab: Vec<Vec<Option<DiffOp>>> = vec![vec![None; m + 1]; m];
    // roots by decreasing height
    let mut ids: Vec<usize> = (0..m).collect();
    ids.sort_by_key(|&id| -rs.roots[id].height);
    for &beta in &ids {
        let posb = ord.pos_of[beta];
        let xb = DiffOp::x_var(m, posb);
        let mut row: Vec<Option<DiffOp>> = vec![None; m + 1];
        row[posb] = Some(xb.clone());
        row[posb + 1] = Some(xb.clone());
        // upward: cut from posb+2 to m, crossing block at position cut-1
        for cut in posb + 2..=m {
            let p = cut - 1;
            let gamma = ord.root_id(p);
            let mut op = row[cut - 1].clone().unwrap();
            for j in 1..=3u64 {
                let (target, coef) = eta_coeff(rs, sc, beta, gamma, j);
                let Some(target) = target else { continue };
                let prev = tab[target][cut - 1]
                    .as_ref()
                    .expect("higher root filled")
                    .clone();
                let mut dj = DiffOp::d_var(m, p);
                for _ in 1..j {
                    dj = dj.compose(&DiffOp::d_var(m, p));
                }
                op = op.add(&prev.compose(&dj).scale(&coef));
            }
            row[cut] = Some(op);
        }
        // downward: cut from posb-1 to 0, crossing block at position cut
        for cut in (0..posb).rev() {
            let p = cut;
            let gamma = ord.root_id(p);
            let mut op = row[cut + 1].clone().unwrap();
            for j in 1..=3u64 {
                let (target, coef) = eta_coeff(rs, sc, beta, gamma, j);
                let Some(target) = target else { continue };
                let prev = tab[target][cut]
                    .as_ref()
                    .expect("higher root filled")
                    .clone();
                let mut dj = DiffOp::d_var(m, p);
                for _ in 1..j {
                    dj = dj.compose(&DiffOp::d_var(m, p));
                }
                op = op.sub(&prev.compose(&dj).scale(&coef));
            }
            row[cut] = Some(op);
        }
        tab[beta] = row;
    }
    EtaTable {
        tab: (0..m)
            .map(|beta| {
                std::mem::take(&mut tab[beta])
                    .into_iter()
                    .map(|o| o.expect("eta cut filled"))
                    .collect()
            })
            .collect(),
    }
}

/// `zeta_alpha = <lambda, alpha^vee> - sum_beta <beta, alpha^vee> x_beta d_beta`.
pub fn build_zeta(rs: &RootSystem, ord: &RootOrder, lambda: &Weight, di: usize) -> DiffOp {
    let m = rs.m;
    let mut op = DiffOp::constant(m, lambda.c[di].clone());
    for p in 0..m {
        let id = ord.root_id(p);
        let k = rs.roots[id].pairings[di];
        if k != 0 {
            let mut x = vec![0u16; m];
            let mut d = vec![0u16; m];
            x[p] = 1;
            d[p] = 1;
            op.push(x, d, rat(-k));
        }
    }
    op
}

/// The leading part `D_beta = sum_{gamma, gamma-beta in Phi+} N_{beta,-gamma}
/// x_{gamma-beta} d_gamma`.
pub fn leading_d(rs: &RootSystem, ord: &RootOrder, sc: &StructureConstants, beta: usize) -> DiffOp {
    let m = rs.m;
    let mut op = DiffOp::zero(m);
    for gpos in 0..m {
        let gamma = ord.root_id(gpos);
        let Some(diff) = ssum(rs, pos(gamma), neg(beta)) else {
            continue;
        };
        if diff < 0 {
            continue;
        }
        let dpos = ord.pos_of[crate::chevalley::root_id(diff)];
        let mut x = vec![0u16; m];
        let mut d = vec![0u16; m];
        x[dpos] = 1;
        d[gpos] = 1;
        op.push(x, d, rat(sc.n(pos(beta), neg(gamma))));
    }
    op
}

/// Full operator set for a fixed highest weight.
pub struct LieOps {
    pub lambda: Weight,
    /// zeta per simple index.
    pub zeta: Vec<DiffOp>,
    /// eta per PBW position.
    pub eta: Vec<DiffOp>,
    /// d per PBW position.
    pub d: Vec<DiffOp>,
    /// `eta_alpha - x_alpha` per simple index, the nilpotent part used by
    /// the power series.
    pub eta_tail: Vec<DiffOp>,
}

pub fn build_ops(
    rs: &RootSystem,
    ord: &RootOrder,
    sc: &StructureConstants,
    lambda: &Weight,
) -> Result<LieOps, Error> {
    let m = rs.m;
    let etas = build_eta_table(rs, ord, sc);
    let eta: Vec<DiffOp> = (0..m)
        .map(|p| etas.tab[ord.root_id(p)][0].clone())
        .collect();

    // d for simple roots by the downward recursion on the cut.
    let mut d_ops: Vec<Option<DiffOp>> = vec![None; m];
    for di in 0..rs.rank {
        let beta = ord.root_id(ord.delta_pos[di]);
        let mut cur = DiffOp::zero(m); // d(beta, m) = 0
        for cut in (0..m).rev() {
            let p = cut;
            let gamma = ord.root_id(p);
            if gamma == beta {
                // crossing its own block: second-order sl(2) correction
                // (<lam,b^vee> - sum_{later blocks} <beta_j,b^vee> x_j d_j - x_i d_i) d_i
                let mut k = DiffOp::constant(m, lambda.c[di].clone());
                for p2 in cut + 1..m {
                    let id2 = ord.root_id(p2);
                    let pairing = rs.roots[id2].pairings[di];
                    if pairing != 0 {
                        let mut x = vec![0u16; m];
                        let mut dd = vec![0u16; m];
                        x[p2] = 1;
                        dd[p2] = 1;
                        k.push(x, dd, rat(-pairing));
                    }
                }
                {
                    let mut x = vec![0u16; m];
                    let mut dd = vec![0u16; m];
                    x[p] = 1;
                    dd[p] = 1;
                    k.push(x, dd, -Rat::one());
                }
                cur = cur.add(&k.compose(&DiffOp::d_var(m, p)));
            } else {
                for j in 1..=3u64 {
                    let (target, coef) = d_coeff(rs, sc, beta, gamma, j);
                    let Some(target) = target else { continue };
                    let prev = &etas.tab[target][cut];
                    let mut dj = DiffOp::d_var(m, p);
                    for _ in 1..j {
                        dj = dj.compose(&DiffOp::d_var(m, p));
                    }
                    cur = cur.sub(&prev.compose(&dj).scale(&coef));
                }
            }
        }
        d_ops[ord.delta_pos[di]] = Some(cur);
    }

    // Non-simple d via commutators along a simple decomposition,
    // in increasing height.
    let mut ids: Vec<usize> = (0..m).collect();
    ids.sort_by_key(|&id| rs.roots[id].height);
    let simple_ids = rs.simple_ids();
    for &beta in &ids {
        let bpos = ord.pos_of[beta];
        if d_ops[bpos].is_some() {
            continue;
        }
        let mut built = None;
        for (di, &alpha) in simple_ids.iter().enumerate() {
            let _ = di;
            let Some(rest) = ssum(rs, pos(beta), neg(alpha)) else {
                continue;
            };
            if rest < 0 {
                continue;
            }
            let rest = crate::chevalley::root_id(rest);
            let (da, db) = (
                d_ops[ord.pos_of[alpha]].clone(),
                d_ops[ord.pos_of[rest]].clone(),
            );
            if let (Some(da), Some(db)) = (da, db) {
                let nval = sc.n(pos(alpha), pos(rest));
                if nval == 0 {
                    continue;
                }
                built = Some(da.commutator(&db).scale(&rat(nval).recip()));
                break;
            }
        }
        d_ops[bpos] =
            Some(built.ok_or_else(|| {
                Error::Internal(format!("no simple decomposition for root {beta}"))
            })?);
    }

    let zeta: Vec<DiffOp> = (0..rs.rank)
        .map(|di| build_zeta(rs, ord, lambda, di))
        .collect();
    let eta_tail: Vec<DiffOp> = (0..rs.rank)
        .map(|di| {
            let p = ord.delta_pos[di];
            eta[p].sub(&DiffOp::x_var(m, p))
        })
        .collect();
    Ok(LieOps {
        lambda: lambda.clone(),
        zeta,
        eta,
        d: d_ops.into_iter().map(|o| o.unwrap()).collect(),
        eta_tail,
    })
}

/// A good ordering is one where `x_alpha` and `eta_alpha` commute for every
/// simple alpha; that is exactly what makes `eta_alpha^c` well-defined.
pub fn verify_good_ordering(rs: &RootSystem, ord: &RootOrder, sc: &StructureConstants) -> bool {
    let etas = build_eta_table(rs, ord, sc);
    (0..rs.rank).all(|di| {
        let p = ord.delta_pos[di];
        let id = ord.root_id(p);
        let x = DiffOp::x_var(rs.m, p);
        etas.tab[id][0].commutator(&x).is_zero()
    })
}

/// Shape of `eta_beta`: every non-leading term has `a` supported away from
/// the simple variables and `|a| <= |b|`.
pub fn eta_shape_ok(op: &DiffOp, beta_pos: usize, ord: &RootOrder) -> bool {
    op.terms.iter().all(|(mon, _)| {
        let is_x_beta = mon.d.iter().all(|&v| v == 0)
            && mon
                .x
                .iter()
                .enumerate()
                .all(|(p, &v)| v == if p == beta_pos { 1 } else { 0 });
        if is_x_beta {
            return true;
        }
        let a: i64 = mon.x.iter().map(|&v| v as i64).sum();
        let b: i64 = mon.d.iter().map(|&v| v as i64).sum();
        let simple_free = ord.delta_pos.iter().all(|&p| mon.x[p] == 0);
        simple_free && a <= b
    })
}

/// Shape of `d_beta`: `d_beta - D_beta` lies in `A^{-1}`.
pub fn d_shape_ok(
    op: &DiffOp,
    rs: &RootSystem,
    ord: &RootOrder,
    sc: &StructureConstants,
    beta: usize,
) -> bool {
    let lead = leading_d(rs, ord, sc, beta);
    let diff = op.sub(&lead);
    diff.terms.keys().all(|mon| {
        let a: i64 = mon.x.iter().map(|&v| v as i64).sum();
        let b: i64 = mon.d.iter().map(|&v| v as i64).sum();
        a < b
    })
}

/// `eta_alpha^c(f)` as the truncated falling-factorial series
/// `sum_p <c>_p/p! x_alpha^{c-p} (eta_alpha - x_alpha)^p (f)`.
///
/// Requires a certified good ordering (the caller enforces it); `budget`
/// caps the number of tail applications when `c` is not a natural number.
pub fn eta_power(
    rs: &RootSystem,
    ord: &RootOrder,
    ops: &LieOps,
    di: usize,
    c: &Rat,
    f: &Series,
    budget: i64,
) -> Result<Series, Error> {
    let _ = rs;
    let m = ord.m;
    let tail = &ops.eta_tail[di];
    let natural = as_nat(c);
    let cap = match natural {
        Some(k) => k as i64,
        None => match f.depth {
            Some(d) => budget.min(d),
            None => budget,
        },
    };
    if cap < 0 {
        return Err(Error::DepthExhausted("eta power budget negative".into()));
    }
    let mut out = Series {
        n: ord.n,
        m,
        terms: Default::default(),
        depth: None,
    };
    let mut g = f.clone();
    let mut truncated = false;
    for p in 0..=cap {
        let coef = falling(c, p as u64) / factorial(p as u64);
        if !coef.is_zero() && !g.is_zero() {
            let mut simple = vec![Rat::zero(); ord.n];
            simple[di] = c - rat(p);
            let term = g.mul_monomial(&simple, &vec![0u16; m - ord.n], &coef);
            out = out.add(&term);
        }
        if g.is_zero() {
            break;
        }
        if p == cap {
            if natural.is_none() {
                truncated = true;
            }
            break;
        }
        g = g.apply(tail, ord)?;
    }
    if truncated {
        let d = match f.depth {
            Some(d) => d.min(cap),
            None => cap,
        };
        out.depth = Some(match out.depth {
            Some(existing) => existing.min(d),
            None => d,
        });
    }
    Ok(out)
}
