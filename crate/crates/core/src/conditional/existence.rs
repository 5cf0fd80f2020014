//! Exact deciders for the existence of Cano-type conditionals.
//!
//! A Cano-type conditional is a distribution over covers `a: Ξ_p → 2^{Ξ_rest}`
//! with every `a(ξ)` nonempty. Because such a focal meets every cylinder of a
//! `p`-marginal focal, combining with the marginal never conflicts, and the
//! combined masses are linear in the conditional's masses. Both questions
//! become `A x = b, x ≥ 0` over a pruned family of candidate covers.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::mass::MassFunction;
use crate::rational::Rational;
use crate::set::FocalSet;

use super::lp::feasible_point;
use super::predicates::{is_cano_type, is_marginally_consistent};
use super::Split;

/// Default cap on the joint frame size for the deciders.
pub const DEFAULT_FRAME_CAP: usize = 16;

/// Candidate covers beyond this count abort the decision.
const CANDIDATE_LIMIT: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Feasible,
    Infeasible,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Feasible => "feasible",
            Verdict::Infeasible => "infeasible",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExistenceMethod {
    LinearFeasibility,
    /// The candidate family was empty, so no system had to be solved.
    Exhaustive,
}

impl ExistenceMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            ExistenceMethod::LinearFeasibility => "linear-feasibility",
            ExistenceMethod::Exhaustive => "exhaustive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExistenceCertificate {
    pub verdict: Verdict,
    pub witness: Option<MassFunction>,
    pub method: ExistenceMethod,
}

impl ExistenceCertificate {
    pub fn is_feasible(&self) -> bool {
        self.verdict == Verdict::Feasible
    }
}

/// Is there a proper Cano-type `c` with `m↓X = (m↓p ⊕ c)↓X` for every `X`?
pub fn cano_conditional_exists<S: AsRef<str>>(
    m: &MassFunction,
    given: &[S],
    cap: usize,
) -> Result<ExistenceCertificate> {
    let setup = Setup::new(m, given, cap)?;
    let rest = setup.split.rest().clone();
    // Per rest variable: projection map from the rest frame and its marginal.
    let mut targets: Vec<(Vec<usize>, usize, MassFunction)> = Vec::new();
    for name in rest.names() {
        let sub = Arc::new(rest.subframe(&[name])?);
        let whole = Arc::new(m.frame().subframe(&[name])?);
        targets.push((rest.projection_map(&sub)?, sub.size(), m.marginalize_to(&whole)?));
    }
    let key = |u: &FocalSet| -> Vec<FocalSet> {
        targets.iter().map(|(map, size, _)| FocalSet::from_indices(*size, u.iter().map(|c| map[c]))).collect()
    };
    // Largest sets first: the solver then prefers the least committal covers.
    let mut all_subsets: Vec<FocalSet> =
        (1u64..1 << rest.size()).map(|bits| FocalSet::from_mask(rest.size(), bits)).collect();
    all_subsets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let options: Vec<Vec<FocalSet>> = setup.members.iter().map(|_| all_subsets.clone()).collect();
    let row_ok = |row: &FocalSet, cover: &[FocalSet]| {
        let u = setup.row_union(row, cover);
        key(&u).iter().zip(&targets).all(|(b, (_, _, marginal))| !marginal.mass(b).is_zero())
    };
    let candidates = setup.candidates(&options, row_ok)?;

    let mut index: BTreeMap<(usize, FocalSet), usize> = BTreeMap::new();
    let mut rhs = Vec::new();
    for (k, (_, _, marginal)) in targets.iter().enumerate() {
        for (b, mass) in marginal.focals() {
            index.insert((k, b.clone()), rhs.len());
            rhs.push(mass.clone());
        }
    }
    let columns: Vec<Vec<Rational>> = candidates
        .iter()
        .map(|cover| {
            let mut col = vec![Rational::zero(); rhs.len()];
            for (row, mass) in setup.marginal.focals() {
                for (k, b) in key(&setup.row_union(row, cover)).into_iter().enumerate() {
                    col[index[&(k, b)]] += mass;
                }
            }
            col
        })
        .collect();
    let cert = setup.decide(&candidates, columns, rhs)?;
    if let Some(w) = &cert.witness {
        if !is_cano_type(w, given)? || !is_marginally_consistent(m, given, w)? {
            return Err(Error::CertificateRejected);
        }
    }
    Ok(cert)
}

/// Is there a proper Cano-type `c` with `m = m↓p ⊕ c` exactly?
pub fn decomposition_exists<S: AsRef<str>>(m: &MassFunction, given: &[S], cap: usize) -> Result<ExistenceCertificate> {
    let setup = Setup::new(m, given, cap)?;
    let split = &setup.split;
    let options: Vec<Vec<FocalSet>> = setup
        .members
        .iter()
        .map(|&xi| {
            let mut slices: Vec<FocalSet> =
                m.focal_sets().map(|f| split.slice(f, xi)).filter(|s| !s.is_empty()).collect();
            slices.sort();
            slices.dedup();
            slices
        })
        .collect();
    let section = |row: &FocalSet, cover: &[FocalSet]| {
        let mut out = m.frame().empty_set();
        for xi in row.iter() {
            for r in cover[xi].iter() {
                out.insert(split.config(xi, r));
            }
        }
        out
    };
    let row_ok = |row: &FocalSet, cover: &[FocalSet]| !m.mass(&section(row, cover)).is_zero();
    let candidates = setup.candidates(&options, row_ok)?;

    let index: BTreeMap<&FocalSet, usize> = m.focal_sets().enumerate().map(|(i, f)| (f, i)).collect();
    let rhs: Vec<Rational> = m.focals().map(|(_, v)| v.clone()).collect();
    let columns: Vec<Vec<Rational>> = candidates
        .iter()
        .map(|cover| {
            let mut col = vec![Rational::zero(); rhs.len()];
            for (row, mass) in setup.marginal.focals() {
                col[index[&section(row, cover)]] += mass;
            }
            col
        })
        .collect();
    let cert = setup.decide(&candidates, columns, rhs)?;
    if let Some(w) = &cert.witness {
        let prior = setup.marginal.vacuous_extend(m.frame())?;
        if !is_cano_type(w, given)? || prior.combine(w)?.0 != *m {
            return Err(Error::CertificateRejected);
        }
    }
    Ok(cert)
}

struct Setup {
    split: Split,
    marginal: MassFunction,
    /// Configurations of `p` covered by some marginal focal.
    members: Vec<usize>,
}

impl Setup {
    fn new<S: AsRef<str>>(m: &MassFunction, given: &[S], cap: usize) -> Result<Self> {
        if m.frame().size() > cap {
            return Err(Error::FrameTooLarge { size: m.frame().size(), max: cap });
        }
        if !m.is_nonnegative() {
            return Err(Error::NotProper);
        }
        let split = Split::new(m.frame(), given)?;
        let marginal = m.marginalize_to(split.given())?;
        let mut seen = split.given().empty_set();
        for f in marginal.focal_sets() {
            seen.union_with(f);
        }
        let members = seen.iter().collect();
        Ok(Self { split, marginal, members })
    }

    fn row_union(&self, row: &FocalSet, cover: &[FocalSet]) -> FocalSet {
        let mut u = self.split.rest().empty_set();
        for xi in row.iter() {
            u.union_with(&cover[xi]);
        }
        u
    }

    /// Covers built from `options[i]` for `members[i]`, keeping those whose
    /// every row passes `row_ok`. Other configurations get the full rest.
    fn candidates<F>(&self, options: &[Vec<FocalSet>], row_ok: F) -> Result<Vec<Vec<FocalSet>>>
    where
        F: Fn(&FocalSet, &[FocalSet]) -> bool,
    {
        let rows: Vec<&FocalSet> = self.marginal.focal_sets().collect();
        let complete_at: Vec<Vec<&FocalSet>> = (0..self.members.len())
            .map(|i| {
                rows.iter()
                    .copied()
                    .filter(|row| self.members.iter().rposition(|&xi| row.contains(xi)) == Some(i))
                    .collect()
            })
            .collect();
        let mut cover = vec![self.split.rest().full_set(); self.split.given().size()];
        let mut out = Vec::new();
        self.fill(0, options, &complete_at, &row_ok, &mut cover, &mut out)?;
        Ok(out)
    }

    fn fill<F>(
        &self,
        depth: usize,
        options: &[Vec<FocalSet>],
        complete_at: &[Vec<&FocalSet>],
        row_ok: &F,
        cover: &mut Vec<FocalSet>,
        out: &mut Vec<Vec<FocalSet>>,
    ) -> Result<()>
    where
        F: Fn(&FocalSet, &[FocalSet]) -> bool,
    {
        if depth == self.members.len() {
            if out.len() == CANDIDATE_LIMIT {
                return Err(Error::SearchBudgetExceeded(CANDIDATE_LIMIT));
            }
            out.push(cover.clone());
            return Ok(());
        }
        let xi = self.members[depth];
        for a in &options[depth] {
            cover[xi] = a.clone();
            if complete_at[depth].iter().all(|row| row_ok(row, cover)) {
                self.fill(depth + 1, options, complete_at, row_ok, cover, out)?;
            }
        }
        Ok(())
    }

    /// Solves `Σ_c x_c · column_c = rhs`, `Σ x = 1`, `x ≥ 0`.
    fn decide(
        &self,
        candidates: &[Vec<FocalSet>],
        columns: Vec<Vec<Rational>>,
        rhs: Vec<Rational>,
    ) -> Result<ExistenceCertificate> {
        if candidates.is_empty() {
            return Ok(ExistenceCertificate {
                verdict: Verdict::Infeasible,
                witness: None,
                method: ExistenceMethod::Exhaustive,
            });
        }
        let mut kept: Vec<usize> = Vec::new();
        let mut seen: BTreeMap<&Vec<Rational>, ()> = BTreeMap::new();
        for (i, col) in columns.iter().enumerate() {
            if seen.insert(col, ()).is_none() {
                kept.push(i);
            }
        }
        let mut matrix: Vec<Vec<Rational>> =
            (0..rhs.len()).map(|r| kept.iter().map(|&c| columns[c][r].clone()).collect()).collect();
        matrix.push(vec![Rational::from_integer(1.into()); kept.len()]);
        let mut b = rhs;
        b.push(Rational::from_integer(1.into()));
        let method = ExistenceMethod::LinearFeasibility;
        let Some(x) = feasible_point(&matrix, &b) else {
            return Ok(ExistenceCertificate { verdict: Verdict::Infeasible, witness: None, method });
        };
        let witness = MassFunction::new(
            self.split.frame().clone(),
            kept.iter().zip(x).filter(|(_, v)| !v.is_zero()).map(|(&c, v)| (self.split.graph(&candidates[c]), v)),
        )?;
        Ok(ExistenceCertificate { verdict: Verdict::Feasible, witness: Some(witness), method })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::rational::ratio;

    #[test]
    fn bel_and_verdicts() {
        let m = corpus::bel_and_mass();
        let cano = cano_conditional_exists(&m, &["X", "Y"], DEFAULT_FRAME_CAP).unwrap();
        assert!(cano.is_feasible());
        assert!(is_marginally_consistent(&m, &["X", "Y"], cano.witness.as_ref().unwrap()).unwrap());
        let dec = decomposition_exists(&m, &["X", "Y"], DEFAULT_FRAME_CAP).unwrap();
        assert_eq!(dec.verdict, Verdict::Infeasible);
    }

    #[test]
    fn forty_sixty_verdicts() {
        let m = corpus::forty_sixty_mass();
        assert_eq!(decomposition_exists(&m, &["X"], DEFAULT_FRAME_CAP).unwrap().verdict, Verdict::Infeasible);
        let cano = cano_conditional_exists(&m, &["X"], DEFAULT_FRAME_CAP).unwrap();
        assert!(cano.is_feasible());
        let w = cano.witness.unwrap();
        let f = m.frame();
        let z1 = f.box_of(&[("X", &["x1", "x2"][..]), ("Z", &["z1"][..])]).unwrap();
        let z2 = f.box_of(&[("X", &["x1", "x2"][..]), ("Z", &["z2"][..])]).unwrap();
        assert_eq!(w.mass(&z1), ratio(2, 5));
        assert_eq!(w.mass(&z2), ratio(3, 5));
    }

    #[test]
    fn vacuous_and_decomposable() {
        let f = corpus::box_ambiguity_frame();
        let v = MassFunction::vacuous(f.clone());
        let cert = cano_conditional_exists(&v, &["X"], DEFAULT_FRAME_CAP).unwrap();
        assert!(cert.witness.unwrap().is_vacuous());
        let m = corpus::backtracking_marginal()
            .vacuous_extend(&corpus::backtracking_frame())
            .unwrap()
            .combine(&corpus::backtracking_conditional())
            .unwrap()
            .0;
        assert!(decomposition_exists(&m, &["X"], DEFAULT_FRAME_CAP).unwrap().is_feasible());
        assert_eq!(decomposition_exists(&m, &["X"], 4), Err(Error::FrameTooLarge { size: 6, max: 4 }));
    }
}
