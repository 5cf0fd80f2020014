use alloc::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::mass::MassFunction;
use crate::rational::Rational;
use crate::set::FocalSet;

use super::Split;

/// `g(A_p, A_rest) = m(A_p × A_rest) / m↓p(A_p)`, row by row.
///
/// Every row starts with total one. The approximation loop lowers the
/// selected entry of every row by the same amount, so row totals stay equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualTable {
    split: Split,
    marginal: MassFunction,
    rows: BTreeMap<FocalSet, BTreeMap<FocalSet, Rational>>,
}

pub fn residual_table<S: AsRef<str>>(m: &MassFunction, given: &[S]) -> Result<ResidualTable> {
    let split = Split::new(m.frame(), given)?;
    if !m.is_nonnegative() {
        return Err(Error::NotProper);
    }
    let marginal = m.marginalize_to(split.given())?;
    let mut rows: BTreeMap<FocalSet, BTreeMap<FocalSet, Rational>> = BTreeMap::new();
    for (set, mass) in m.focals() {
        if !m.frame().is_box(set) {
            return Err(Error::NonBoxFocal);
        }
        let (g, r) = split.factor(set)?;
        let value = mass / marginal.mass(&g);
        *rows.entry(g).or_default().entry(r).or_insert_with(Rational::zero) += value;
    }
    Ok(ResidualTable { split, marginal, rows })
}

impl ResidualTable {
    pub fn split(&self) -> &Split {
        &self.split
    }

    /// `m↓p`; its focals are exactly the rows.
    pub fn marginal(&self) -> &MassFunction {
        &self.marginal
    }

    pub fn rows(&self) -> &BTreeMap<FocalSet, BTreeMap<FocalSet, Rational>> {
        &self.rows
    }

    pub fn g(&self, given: &FocalSet, rest: &FocalSet) -> Rational {
        self.rows.get(given).and_then(|r| r.get(rest)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn row_total(&self, given: &FocalSet) -> Rational {
        self.rows.get(given).map(|r| r.values().sum()).unwrap_or_else(Rational::zero)
    }

    pub fn is_exhausted(&self) -> bool {
        self.rows.values().all(|r| r.values().all(Zero::is_zero))
    }

    /// Lowers every selected entry by `amount`, dropping entries that reach 0.
    pub(crate) fn subtract(&mut self, selection: &BTreeMap<FocalSet, FocalSet>, amount: &Rational) {
        for (given, rest) in selection {
            let row = self.rows.get_mut(given).expect("selection row exists");
            let entry = row.get_mut(rest).expect("selection entry exists");
            *entry -= amount;
            if entry.is_zero() {
                row.remove(rest);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::rational::{int, ratio};

    #[test]
    fn forty_sixty_rows() {
        let t = residual_table(&corpus::forty_sixty_mass(), &["X"]).unwrap();
        let x1 = FocalSet::from_mask(2, 0b01);
        let both = FocalSet::from_mask(2, 0b11);
        assert_eq!(t.g(&x1, &FocalSet::from_mask(2, 0b01)), int(1));
        assert_eq!(t.g(&both, &FocalSet::from_mask(2, 0b10)), int(1));
        assert_eq!(t.g(&both, &FocalSet::from_mask(2, 0b01)), int(0));
        assert_eq!(t.marginal().mass(&x1), ratio(2, 5));
    }

    #[test]
    fn bel_and_rows() {
        let m = corpus::bel_and_mass();
        let t = residual_table(&m, &["X", "Y"]).unwrap();
        let tt = FocalSet::singleton(4, 0);
        assert_eq!(t.g(&tt, &FocalSet::singleton(2, 0)), int(1));
        for row in t.rows().keys() {
            assert_eq!(t.row_total(row), int(1));
        }
    }

    #[test]
    fn single_focal_and_errors() {
        let f = corpus::box_ambiguity_frame();
        let t = residual_table(&MassFunction::vacuous(f.clone()), &["X"]).unwrap();
        assert_eq!(t.rows().len(), 1);
        assert_eq!(t.g(&FocalSet::full(2), &FocalSet::full(2)), int(1));
        let [_, diagonal, _] = corpus::box_ambiguity_masses();
        assert_eq!(residual_table(&diagonal, &["X"]), Err(Error::NonBoxFocal));
        assert_eq!(residual_table(&diagonal, &["X", "Z"]), Err(Error::SubsetIsWholeFrame));
        assert_eq!(residual_table::<&str>(&diagonal, &[]), Err(Error::EmptyVariableSubset));
    }
}
