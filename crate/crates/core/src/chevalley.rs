//! Chevalley structure constants `N_{alpha,beta}` with a fixed sign
//! convention: extraspecial pairs (with respect to the height-then-lex total
//! order on positive roots) get positive sign; everything else is forced by
//! Jacobi identities and the standard symmetries.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::Error;
use crate::rat::{rat, Rat};
use crate::rootsys::RootSystem;

/// A signed root: `+(id+1)` for the positive root `id`, `-(id+1)` for its
/// negative.
pub type SRoot = i32;

pub fn pos(id: usize) -> SRoot {
    (id + 1) as i32
}

pub fn neg(id: usize) -> SRoot {
    -((id + 1) as i32)
}

pub fn root_id(s: SRoot) -> usize {
    (s.unsigned_abs() as usize) - 1
}

pub fn is_positive(s: SRoot) -> bool {
    s > 0
}

#[derive(Debug, Clone)]
pub struct StructureConstants {
    /// `N_{alpha,beta}` for all pairs of roots with `alpha + beta` a root.
    table: HashMap<(SRoot, SRoot), i64>,
    /// `(p, q)` of the alpha-string through beta, for pairs stored above.
    strings: HashMap<(SRoot, SRoot), (i64, i64)>,
}

/// Ambient vector of a signed root.
fn svec(rs: &RootSystem, s: SRoot) -> Vec<Rat> {
    let v = &rs.roots[root_id(s)].vec;
    if s > 0 {
        v.clone()
    } else {
        v.iter().map(|x| -x).collect()
    }
}

/// Signed id of the sum of two signed roots, if the sum is a root.
pub fn ssum(rs: &RootSystem, a: SRoot, b: SRoot) -> Option<SRoot> {
    let va = svec(rs, a);
    let vb = svec(rs, b);
    let v: Vec<Rat> = va.iter().zip(&vb).map(|(x, y)| x + y).collect();
    if v.iter().all(|x| x.is_zero()) {
        return None;
    }
    if let Some(id) = rs.pos_root_id(&v) {
        return Some(pos(id));
    }
    let nv: Vec<Rat> = v.iter().map(|x| -x).collect();
    rs.pos_root_id(&nv).map(neg)
}

/// The alpha-string through beta: maximal `p, q >= 0` with
/// `beta - p alpha, ..., beta + q alpha` all roots. Errors when
/// `beta = +/- alpha`.
pub fn root_string(rs: &RootSystem, alpha: SRoot, beta: SRoot) -> Result<(i64, i64), Error> {
    if root_id(alpha) == root_id(beta) {
        return Err(Error::Precondition(
            "root string needs beta != ±alpha".into(),
        ));
    }
    let va = svec(rs, alpha);
    let vb = svec(rs, beta);
    let step = |v: &[Rat], dir: i64| -> Vec<Rat> {
        v.iter().zip(&va).map(|(x, a)| x + rat(dir) * a).collect()
    };
    let mut p = 0;
    let mut cur = step(&vb, -1);
    while rs.is_root_vec(&cur) {
        p += 1;
        cur = step(&cur, -1);
    }
    let mut q = 0;
    let mut cur = step(&vb, 1);
    while rs.is_root_vec(&cur) {
        q += 1;
        cur = step(&cur, 1);
    }
    Ok((p, q))
}

fn snorm(rs: &RootSystem, s: SRoot) -> Rat {
    rs.roots[root_id(s)].norm.clone()
}

/// Total order on positive roots: height first; ties broken so that roots
/// with earlier simple-root support come first. Returns true when `a < b`.
fn before(rs: &RootSystem, a: usize, b: usize) -> bool {
    let (ra, rb) = (&rs.roots[a], &rs.roots[b]);
    ra.height < rb.height || (ra.height == rb.height && ra.coords > rb.coords)
}

pub fn compute_constants(rs: &RootSystem) -> Result<StructureConstants, Error> {
    // Special pairs per sum root: (alpha, beta) positive, alpha < beta,
    // alpha + beta = gamma positive.
    let mut special: Vec<Vec<(usize, usize)>> = vec![Vec::new(); rs.m];
    for a in 0..rs.m {
        for b in 0..rs.m {
            if a != b && before(rs, a, b) {
                if let Some(g) = rs.sum_id(a, b) {
                    special[g].push((a, b));
                }
            }
        }
    }
    for pairs in special.iter_mut() {
        pairs.sort_by(|x, y| {
            if before(rs, x.0, y.0) {
                std::cmp::Ordering::Less
            } else if x.0 == y.0 {
                std::cmp::Ordering::Equal
            } else {
                std::cmp::Ordering::Greater
            }
        });
    }

    // Positive-pair table, filled in increasing height of the sum.
    let mut npos: HashMap<(usize, usize), i64> = HashMap::new();
    let string_len = |a: usize, b: usize| -> Result<i64, Error> {
        let (p, _) = root_string(rs, pos(a), pos(b))?;
        Ok(p + 1)
    };
    let mut sum_ids: Vec<usize> = (0..rs.m).filter(|&g| !special[g].is_empty()).collect();
    sum_ids.sort_by_key(|&g| rs.roots[g].height);

    for &g in &sum_ids {
        let (a1, b1) = special[g][0];
        npos.insert((a1, b1), string_len(a1, b1)?);
        npos.insert((b1, a1), -npos[&(a1, b1)]);
        let norm = |id: usize| rs.roots[id].norm.clone();
        for &(a, b) in special[g].iter().skip(1) {
            // Jacobi identity on (E_{-a1}, E_a, E_b); every unknown reduces
            // to positive pairs whose sum has smaller height.
            let n_look = |x: usize, y: usize| -> i64 { *npos.get(&(x, y)).unwrap_or(&0) };
            // T1 = N_{-a1, a} * N_{a - a1, b}
            let t1 = match ssum(rs, pos(a), neg(a1)) {
                Some(d) if is_positive(d) => {
                    let d = root_id(d);
                    // N_{-a1, a} = -(|d|^2/|a|^2) N_{d, a1}
                    let coef = snorm(rs, pos(d)) / norm(a);
                    let n1 = -coef * rat(n_look(d, a1));
                    let n2 = rat(n_look(d, b));
                    n1 * n2
                }
                _ => Rat::zero(),
            };
            // T3 = N_{b, -a1} * N_{b - a1, a}
            let t3 = match ssum(rs, pos(b), neg(a1)) {
                Some(d) if is_positive(d) => {
                    let d = root_id(d);
                    let coef = snorm(rs, pos(d)) / norm(b);
                    let n1 = -coef * rat(n_look(a1, d));
                    let n2 = rat(n_look(d, a));
                    n1 * n2
                }
                _ => Rat::zero(),
            };
            // N_{g, -a1} = -(|b1|^2/|g|^2) N_{a1, b1}
            let ng = -(norm(b1) / norm(g)) * rat(npos[&(a1, b1)]);
            if ng.is_zero() {
                return Err(Error::Internal("extraspecial constant vanished".into()));
            }
            let val = -(t1 + t3) / ng;
            if !val.is_integer() || val.is_zero() {
                return Err(Error::Internal(format!(
                    "special pair constant not a nonzero integer: {val}"
                )));
            }
            let vi: i64 = val
                .to_integer()
                .try_into()
                .map_err(|_| Error::Internal("structure constant overflow".into()))?;
            npos.insert((a, b), vi);
            npos.insert((b, a), -vi);
        }
    }

    // Extend to all signed pairs using N_{-a,-b} = -N_{a,b} and the
    // norm-weighted cyclic rule for triples summing to zero.
    let mut table: HashMap<(SRoot, SRoot), i64> = HashMap::new();
    let mut strings: HashMap<(SRoot, SRoot), (i64, i64)> = HashMap::new();
    for a in 0..rs.m {
        for b in 0..rs.m {
            if a == b {
                continue;
            }
            if let Some(&v) = npos.get(&(a, b)) {
                table.insert((pos(a), pos(b)), v);
                table.insert((neg(a), neg(b)), -v);
            }
            // xi = pos(a), eta = neg(b): sum zeta = a - b
            if let Some(z) = ssum(rs, pos(a), neg(b)) {
                let zid = root_id(z);
                let v = if is_positive(z) {
                    // N_{a, -b} = -(|z|^2/|a|^2) N_{b, z}
                    let coef = snorm(rs, z) / snorm(rs, pos(a));
                    -coef * rat(*npos.get(&(b, zid)).unwrap_or(&0))
                } else {
                    // zeta negative: N_{a, -b} = (|z|^2/|b|^2) N_{z', a}, z' = -z
                    let coef = snorm(rs, z) / snorm(rs, pos(b));
                    coef * rat(*npos.get(&(zid, a)).unwrap_or(&0))
                };
                if !v.is_integer() {
                    return Err(Error::Internal("mixed-pair constant not integral".into()));
                }
                let vi: i64 = v.to_integer().try_into().unwrap();
                if vi == 0 {
                    return Err(Error::Internal("mixed-pair constant vanished".into()));
                }
                table.insert((pos(a), neg(b)), vi);
                table.insert((neg(b), pos(a)), -vi);
                table.insert((neg(a), pos(b)), -vi);
                table.insert((pos(b), neg(a)), vi);
            }
        }
    }

    // Consistency: |N_{x,y}| = p + 1 for every stored pair.
    for (&(x, y), &v) in &table {
        let (p, _) = root_string(rs, x, y)?;
        if v.abs() != p + 1 {
            return Err(Error::Internal(format!(
                "|N| != p+1 for pair ({x},{y}): {v} vs p={p}"
            )));
        }
        strings.insert((x, y), root_string(rs, x, y)?);
    }

    Ok(StructureConstants { table, strings })
}

impl StructureConstants {
    /// `N_{a,b}`; zero when `a + b` is not a root.
    pub fn n(&self, a: SRoot, b: SRoot) -> i64 {
        *self.table.get(&(a, b)).unwrap_or(&0)
    }

    pub fn string(&self, a: SRoot, b: SRoot) -> Option<(i64, i64)> {
        self.strings.get(&(a, b)).copied()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn max_abs(&self) -> i64 {
        self.table.values().map(|v| v.abs()).max().unwrap_or(0)
    }

    /// JSON triples (alpha signed index, beta signed index, N), sorted.
    pub fn to_json(&self) -> serde_json::Value {
        let mut triples: Vec<(SRoot, SRoot, i64)> =
            self.table.iter().map(|(&(a, b), &v)| (a, b, v)).collect();
        triples.sort();
        serde_json::json!(triples)
    }
}
