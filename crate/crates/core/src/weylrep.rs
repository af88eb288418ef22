//! The differential-operator action of the Weyl group on truncated-up
//! series: simple reflections act on a weighted `f` of weight `mu` by
//! `eta_alpha^{<mu+rho, alpha^vee>}`, extended additively over weighted
//! components; words act by composition.

use num_traits::One;

use crate::chevalley::StructureConstants;
use crate::error::Error;
use crate::liediff::{build_ops, eta_power, verify_good_ordering, LieOps};
use crate::rat::{rat, Rat};
use crate::rootsys::{RootOrder, RootSystem, Weight, WeylWord};
use crate::weylalg::Series;

pub struct WeylCtx<'a> {
    pub rs: &'a RootSystem,
    pub ord: &'a RootOrder,
    pub sc: &'a StructureConstants,
    pub lambda: Weight,
    pub ops: LieOps,
    pub depth: i64,
}

impl<'a> WeylCtx<'a> {
    pub fn new(
        rs: &'a RootSystem,
        ord: &'a RootOrder,
        sc: &'a StructureConstants,
        lambda: Weight,
        depth: i64,
    ) -> Result<Self, Error> {
        if !ord.good && !verify_good_ordering(rs, ord, sc) {
            return Err(Error::Precondition(
                "ordering is not good; eta powers are ill-defined".into(),
            ));
        }
        let ops = build_ops(rs, ord, sc, &lambda)?;
        Ok(WeylCtx {
            rs,
            ord,
            sc,
            lambda,
            ops,
            depth,
        })
    }

    /// `s_alpha(f)`: per weighted component of weight `mu`, apply
    /// `eta_alpha^{<mu+rho, alpha^vee>}`.
    pub fn simple_reflect(&self, di: usize, f: &Series) -> Result<Series, Error> {
        let comps = f.weight_components(self.rs, self.ord, &self.lambda);
        let mut out = Series::zero(self.ord);
        out.depth = f.depth;
        for (mu, comp) in comps {
            let c = &mu.c[di] + Rat::one();
            let refl = eta_power(self.rs, self.ord, &self.ops, di, &c, &comp, self.depth)?;
            out = out.add(&refl);
        }
        Ok(out)
    }

    /// Apply a word, rightmost letter first.
    pub fn weyl_apply(&self, w: &WeylWord, f: &Series) -> Result<Series, Error> {
        let mut cur = f.clone();
        for &i in w.0.iter().rev() {
            cur = self.simple_reflect(i, &cur)?;
        }
        Ok(cur)
    }

    /// `w(1)`.
    pub fn w1(&self, w: &WeylWord) -> Result<Series, Error> {
        self.weyl_apply(w, &Series::one(self.ord))
    }

    /// Braid order of the pair of simple reflections `(i, j)`.
    pub fn braid_order(&self, i: usize, j: usize) -> u32 {
        match self.rs.cartan[i][j] * self.rs.cartan[j][i] {
            0 => 2,
            1 => 3,
            2 => 4,
            3 => 6,
            _ => unreachable!("crystallographic Cartan matrix"),
        }
    }

    /// Verify the braid identity for the pair `(i, j)` at exponents
    /// `(c1, c2)` on a probe, exactly within the common depth. The pair is
    /// oriented so that `alpha` is the shorter simple root.
    pub fn verify_braid(
        &self,
        i: usize,
        j: usize,
        c1: &Rat,
        c2: &Rat,
        probe: &Series,
    ) -> Result<bool, Error> {
        let (alpha, beta) = {
            let ni = &self.rs.roots[self.rs.simple_ids()[i]].norm;
            let nj = &self.rs.roots[self.rs.simple_ids()[j]].norm;
            if ni <= nj {
                (i, j)
            } else {
                (j, i)
            }
        };
        let m = self.braid_order(i, j);
        // Exponent sequences, read right to left (innermost application
        // first). Entries are (simple index, exponent).
        let seq = |pattern: &[(usize, Rat)]| -> Result<Series, Error> {
            let mut cur = probe.clone();
            for (di, c) in pattern.iter().rev() {
                cur = eta_power(self.rs, self.ord, &self.ops, *di, c, &cur, self.depth)?;
            }
            Ok(cur)
        };
        let (lhs, rhs) = match m {
            2 => (
                seq(&[(beta, c2.clone()), (alpha, c1.clone())])?,
                seq(&[(alpha, c1.clone()), (beta, c2.clone())])?,
            ),
            3 => (
                seq(&[(alpha, c2.clone()), (beta, c1 + c2), (alpha, c1.clone())])?,
                seq(&[(beta, c1.clone()), (alpha, c1 + c2), (beta, c2.clone())])?,
            ),
            4 => (
                seq(&[
                    (beta, c2.clone()),
                    (alpha, c1 + rat(2) * c2),
                    (beta, c1 + c2),
                    (alpha, c1.clone()),
                ])?,
                seq(&[
                    (alpha, c1.clone()),
                    (beta, c1 + c2),
                    (alpha, c1 + rat(2) * c2),
                    (beta, c2.clone()),
                ])?,
            ),
            6 => (
                seq(&[
                    (beta, c2.clone()),
                    (alpha, c1 + rat(3) * c2),
                    (beta, c1 + rat(2) * c2),
                    (alpha, rat(2) * c1 + rat(3) * c2),
                    (beta, c1 + c2),
                    (alpha, c1.clone()),
                ])?,
                seq(&[
                    (alpha, c1.clone()),
                    (beta, c1 + c2),
                    (alpha, rat(2) * c1 + rat(3) * c2),
                    (beta, c1 + rat(2) * c2),
                    (alpha, c1 + rat(3) * c2),
                    (beta, c2.clone()),
                ])?,
            ),
            _ => unreachable!(),
        };
        Ok(lhs.eq_within_depth(&rhs, self.ord))
    }
}
