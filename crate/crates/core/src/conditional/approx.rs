//! Iterative construction of a Cano-type conditional from the residual table.
//!
//! Each iteration picks one residual entry `r(A_p)` per row, removes the
//! smallest picked value `g_min` from all of them, and puts `g_min` on the
//! graph of a cover `a: Ξ_p → 2^{Ξ_rest}` with `r(A_p) ⊆ ⋃_{ξ∈A_p} a(ξ)`.
//! The quality credits each row with `|r(A_p)| / |⋃_{ξ∈A_p} a(ξ)|` of its
//! share, so `q = 1` exactly when every cover is tight.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::mass::MassFunction;
use crate::rational::Rational;
use crate::set::FocalSet;

use super::residual::{residual_table, ResidualTable};
use super::Split;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Largest residual entry per row, ties to the first in canonical order.
    Greedy,
    /// Search over every selection sequence for the highest quality.
    Exhaustive,
    /// Seeded random restarts; restart 0 is the greedy run.
    Stochastic,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Greedy => "greedy",
            Strategy::Exhaustive => "exhaustive",
            Strategy::Stochastic => "stochastic",
        }
    }
}

impl FromStr for Strategy {
    type Err = ();

    fn from_str(s: &str) -> core::result::Result<Self, ()> {
        match s {
            "greedy" => Ok(Strategy::Greedy),
            "exhaustive" => Ok(Strategy::Exhaustive),
            "stochastic" => Ok(Strategy::Stochastic),
            _ => Err(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoverRule {
    /// `a(ξ)` is the union of the selections of all rows containing `ξ`.
    Union,
    /// The cover with the largest quality contribution for the selection.
    Tightest,
}

impl CoverRule {
    pub fn as_str(self) -> &'static str {
        match self {
            CoverRule::Union => "union",
            CoverRule::Tightest => "tightest",
        }
    }
}

impl FromStr for CoverRule {
    type Err = ();

    fn from_str(s: &str) -> core::result::Result<Self, ()> {
        match s {
            "union" => Ok(CoverRule::Union),
            "tightest" => Ok(CoverRule::Tightest),
            _ => Err(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxOptions {
    pub strategy: Strategy,
    pub seed: Option<u64>,
    /// Defaults to [`CoverRule::Tightest`] for the exhaustive strategy and
    /// [`CoverRule::Union`] otherwise.
    pub cover: Option<CoverRule>,
    /// Number of stochastic restarts, including the greedy one.
    pub restarts: usize,
    /// Exhaustive search gives up after evaluating this many selections.
    pub node_budget: usize,
    /// Rows whose first-iteration selection is fixed by the caller.
    pub first_selection: BTreeMap<FocalSet, FocalSet>,
}

impl Default for ApproxOptions {
    fn default() -> Self {
        Self::new(Strategy::Greedy)
    }
}

impl ApproxOptions {
    pub fn new(strategy: Strategy) -> Self {
        Self {
            strategy,
            seed: None,
            cover: None,
            restarts: 32,
            node_budget: 2_000_000,
            first_selection: BTreeMap::new(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_cover(mut self, cover: CoverRule) -> Self {
        self.cover = Some(cover);
        self
    }

    pub fn with_first_selection(mut self, selection: BTreeMap<FocalSet, FocalSet>) -> Self {
        self.first_selection = selection;
        self
    }

    /// The cover rule in effect once the strategy default is applied.
    pub fn cover_rule(&self) -> CoverRule {
        self.cover.unwrap_or(match self.strategy {
            Strategy::Exhaustive => CoverRule::Tightest,
            _ => CoverRule::Union,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Iteration {
    /// `r(A_p)` for every focal `A_p` of the `p`-marginal.
    pub selection: BTreeMap<FocalSet, FocalSet>,
    /// `a(ξ)` indexed by configuration of `p`.
    pub cover: Vec<FocalSet>,
    pub g_min: Rational,
    /// Graph of the cover, over the full frame.
    pub added_focal: FocalSet,
    pub q_contribution: Rational,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ApproximationTrace {
    pub iterations: Vec<Iteration>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproximationResult {
    pub conditional: MassFunction,
    pub quality: Rational,
    pub trace: ApproximationTrace,
}

/// Quality of a trace against the `p`-marginal it was built from:
/// `Σ_i Σ_{A_p} g_min_i · m↓p(A_p) · |r_i(A_p)| / |⋃_{ξ∈A_p} a_i(ξ)|`.
pub fn quality(trace: &ApproximationTrace, marginal: &MassFunction) -> Result<Rational> {
    let mut q = Rational::zero();
    for it in &trace.iterations {
        q += &it.g_min * cover_score(marginal, &it.selection, &it.cover)?;
    }
    Ok(q)
}

fn cover_score(
    marginal: &MassFunction,
    selection: &BTreeMap<FocalSet, FocalSet>,
    cover: &[FocalSet],
) -> Result<Rational> {
    if cover.len() != marginal.frame().size() {
        return Err(Error::TraceMismatch("cover is not indexed by the marginal's frame"));
    }
    if !selection.keys().eq(marginal.focal_sets()) {
        return Err(Error::TraceMismatch("selection rows differ from the marginal's focal sets"));
    }
    let mut score = Rational::zero();
    for (row, r) in selection {
        if r.is_empty() || cover.iter().any(|a| a.universe() != r.universe()) {
            return Err(Error::TraceMismatch("selection and cover live on different frames"));
        }
        let union = row_union(cover, row, r.universe());
        if !r.is_subset(&union) {
            return Err(Error::TraceMismatch("selection is not covered"));
        }
        score += marginal.mass(row) * Rational::new(BigInt::from(r.len()), BigInt::from(union.len()));
    }
    Ok(score)
}

fn row_union(cover: &[FocalSet], row: &FocalSet, universe: usize) -> FocalSet {
    let mut u = FocalSet::empty(universe);
    for xi in row.iter() {
        u.union_with(&cover[xi]);
    }
    u
}

/// Runs the construction on `m` given the variables `given`.
pub fn approximate_conditional<S: AsRef<str>>(
    m: &MassFunction,
    given: &[S],
    options: &ApproxOptions,
) -> Result<ApproximationResult> {
    let table = residual_table(m, given)?;
    let solver = Solver::new(&table, options);
    let iterations = match options.strategy {
        Strategy::Greedy => solver.greedy(table.clone())?,
        Strategy::Stochastic => {
            let seed = options.seed.ok_or(Error::MissingSeed)?;
            solver.stochastic(&table, seed)?
        }
        Strategy::Exhaustive => solver.exhaustive(&table)?,
    };
    let trace = ApproximationTrace { iterations };
    let quality = quality(&trace, table.marginal())?;
    let conditional = MassFunction::new(
        table.split().frame().clone(),
        trace.iterations.iter().map(|it| (it.added_focal.clone(), it.g_min.clone())),
    )?;
    log::debug!("conditional approximation finished with quality {quality}");
    Ok(ApproximationResult { conditional, quality, trace })
}

type Selection = BTreeMap<FocalSet, FocalSet>;
type Rows = BTreeMap<FocalSet, BTreeMap<FocalSet, Rational>>;

struct Solver<'a> {
    split: &'a Split,
    marginal: &'a MassFunction,
    options: &'a ApproxOptions,
    rule: CoverRule,
}

impl<'a> Solver<'a> {
    fn new(table: &'a ResidualTable, options: &'a ApproxOptions) -> Self {
        Self { split: table.split(), marginal: table.marginal(), options, rule: options.cover_rule() }
    }

    fn forced(&self, table: &ResidualTable, selection: &mut Selection) -> Result<()> {
        for (row, rest) in &self.options.first_selection {
            if !table.rows().contains_key(row) || !table.g(row, rest).is_positive() {
                return Err(Error::InadmissibleSelection);
            }
            selection.insert(row.clone(), rest.clone());
        }
        Ok(())
    }

    fn step(&self, table: &mut ResidualTable, selection: Selection) -> Result<Iteration> {
        let g_min = selection.iter().map(|(row, rest)| table.g(row, rest)).min().expect("at least one row");
        debug_assert!(g_min.is_positive());
        let (cover, score) = self.cover(&selection)?;
        table.subtract(&selection, &g_min);
        let added_focal = self.split.graph(&cover);
        let q_contribution = &g_min * score;
        Ok(Iteration { selection, cover, g_min, added_focal, q_contribution })
    }

    fn cover(&self, selection: &Selection) -> Result<(Vec<FocalSet>, Rational)> {
        let cover = match self.rule {
            CoverRule::Union => union_cover(self.split, selection),
            CoverRule::Tightest => tightest_cover(self.split, self.marginal, selection),
        };
        let score = cover_score(self.marginal, selection, &cover)?;
        Ok((cover, score))
    }

    fn greedy(&self, mut table: ResidualTable) -> Result<Vec<Iteration>> {
        let mut out = Vec::new();
        while !table.is_exhausted() {
            let mut selection: Selection =
                table.rows().iter().map(|(row, entries)| (row.clone(), argmax(entries))).collect();
            if out.is_empty() {
                self.forced(&table, &mut selection)?;
            }
            out.push(self.step(&mut table, selection)?);
        }
        Ok(out)
    }

    fn stochastic(&self, table: &ResidualTable, seed: u64) -> Result<Vec<Iteration>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best = self.greedy(table.clone())?;
        let mut best_q = total(&best);
        for _ in 1..self.options.restarts {
            if best_q.is_one() {
                break;
            }
            let mut t = table.clone();
            let mut run = Vec::new();
            while !t.is_exhausted() {
                let mut selection: Selection = Selection::new();
                for (row, entries) in t.rows() {
                    let positive: Vec<&FocalSet> = entries.keys().collect();
                    let pick = positive.choose(&mut rng).expect("rows exhaust together");
                    selection.insert(row.clone(), (*pick).clone());
                }
                if run.is_empty() {
                    self.forced(&t, &mut selection)?;
                }
                run.push(self.step(&mut t, selection)?);
            }
            let q = total(&run);
            if q > best_q {
                best = run;
                best_q = q;
            }
        }
        Ok(best)
    }

    fn exhaustive(&self, table: &ResidualTable) -> Result<Vec<Iteration>> {
        let mut search = Search { solver: self, memo: BTreeMap::new(), covers: BTreeMap::new(), nodes: 0 };
        let mut forced = Selection::new();
        self.forced(table, &mut forced)?;
        let (_, first) = search.best(table, &forced)?;
        let mut out = Vec::new();
        let mut t = table.clone();
        let mut next = first;
        while let Some(selection) = next {
            out.push(self.step(&mut t, selection)?);
            next = search.memo.get(t.rows()).and_then(|(_, s)| s.clone());
        }
        debug_assert!(t.is_exhausted());
        Ok(out)
    }
}

fn total(run: &[Iteration]) -> Rational {
    run.iter().map(|it| &it.q_contribution).sum()
}

fn argmax(entries: &BTreeMap<FocalSet, Rational>) -> FocalSet {
    let mut best: Option<(&FocalSet, &Rational)> = None;
    for (rest, g) in entries {
        if best.is_none_or(|(_, b)| g > b) {
            best = Some((rest, g));
        }
    }
    best.expect("row has a positive entry").0.clone()
}

/// Depth-first search with memoization on the residual state. The best
/// future quality depends only on the residual rows, not on the path taken.
struct Search<'s, 'a> {
    solver: &'s Solver<'a>,
    memo: BTreeMap<Rows, (Rational, Option<Selection>)>,
    covers: BTreeMap<Selection, Rational>,
    nodes: usize,
}

impl Search<'_, '_> {
    fn best(&mut self, table: &ResidualTable, forced: &Selection) -> Result<(Rational, Option<Selection>)> {
        if table.is_exhausted() {
            return Ok((Rational::zero(), None));
        }
        if forced.is_empty() {
            if let Some(hit) = self.memo.get(table.rows()) {
                return Ok(hit.clone());
            }
        }
        let remaining = table.row_total(table.rows().keys().next().expect("nonempty table"));
        let choices: Vec<(FocalSet, Vec<(FocalSet, Rational)>)> = table
            .rows()
            .iter()
            .map(|(row, entries)| {
                let options = match forced.get(row) {
                    Some(rest) => vec![(rest.clone(), entries[rest].clone())],
                    None => {
                        let mut v: Vec<(FocalSet, Rational)> =
                            entries.iter().map(|(r, g)| (r.clone(), g.clone())).collect();
                        v.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
                        v
                    }
                };
                (row.clone(), options)
            })
            .collect();

        let mut best: Option<(Rational, Selection)> = None;
        let mut digits = vec![0usize; choices.len()];
        'outer: loop {
            self.nodes += 1;
            if self.nodes > self.solver.options.node_budget {
                return Err(Error::SearchBudgetExceeded(self.solver.options.node_budget));
            }
            let selection: Selection =
                choices.iter().zip(&digits).map(|((row, opts), &d)| (row.clone(), opts[d].0.clone())).collect();
            let g_min = choices.iter().zip(&digits).map(|((_, opts), &d)| &opts[d].1).min().expect("rows").clone();
            let score = self.score(&selection)?;
            let here = &g_min * score;
            let bound = &here + (&remaining - &g_min);
            if best.as_ref().is_none_or(|(b, _)| bound > *b) {
                let mut next = table.clone();
                next.subtract(&selection, &g_min);
                let (future, _) = self.best(&next, &Selection::new())?;
                let value = here + future;
                if best.as_ref().is_none_or(|(b, _)| value > *b) {
                    let done = value == remaining;
                    best = Some((value, selection));
                    if done {
                        break 'outer;
                    }
                }
            }
            for k in (0..digits.len()).rev() {
                digits[k] += 1;
                if digits[k] < choices[k].1.len() {
                    continue 'outer;
                }
                digits[k] = 0;
            }
            break;
        }
        let (value, selection) = best.expect("at least one selection");
        let out = (value, Some(selection));
        if forced.is_empty() {
            self.memo.insert(table.rows().clone(), out.clone());
        }
        Ok(out)
    }

    fn score(&mut self, selection: &Selection) -> Result<Rational> {
        if let Some(s) = self.covers.get(selection) {
            return Ok(s.clone());
        }
        let (_, s) = self.solver.cover(selection)?;
        self.covers.insert(selection.clone(), s.clone());
        Ok(s)
    }
}

/// Configurations of `p` that lie in at least one row, with the rows.
fn memberships(split: &Split, selection: &Selection) -> Vec<Vec<usize>> {
    let rows: Vec<&FocalSet> = selection.keys().collect();
    (0..split.given().size()).map(|xi| (0..rows.len()).filter(|&i| rows[i].contains(xi)).collect()).collect()
}

fn union_cover(split: &Split, selection: &Selection) -> Vec<FocalSet> {
    let rest = split.rest().size();
    let picks: Vec<&FocalSet> = selection.values().collect();
    memberships(split, selection)
        .into_iter()
        .map(|rows| {
            if rows.is_empty() {
                return FocalSet::full(rest);
            }
            let mut a = FocalSet::empty(rest);
            for i in rows {
                a.union_with(picks[i]);
            }
            a
        })
        .collect()
}

/// Branch and bound over covers. Every `a(ξ)` contains the intersection of
/// the selections of its rows (free: it never grows a row union) and lies
/// inside their union (anything more only grows row unions).
fn tightest_cover(split: &Split, marginal: &MassFunction, selection: &Selection) -> Vec<FocalSet> {
    let rest = split.rest().size();
    let rows: Vec<(&FocalSet, &FocalSet, Rational)> =
        selection.iter().map(|(row, r)| (row, r, marginal.mass(row))).collect();
    let member_rows = memberships(split, selection);

    let mut fixed: Vec<FocalSet> = vec![FocalSet::full(rest); split.given().size()];
    let mut free: Vec<(usize, Vec<FocalSet>)> = Vec::new();
    for (xi, rs) in member_rows.iter().enumerate() {
        if rs.is_empty() {
            continue;
        }
        let mut core = FocalSet::full(rest);
        let mut cand = FocalSet::empty(rest);
        for &i in rs {
            core = core.intersection(rows[i].1);
            cand.union_with(rows[i].1);
        }
        let extra: Vec<usize> = cand.difference(&core).iter().collect();
        let mut options: Vec<FocalSet> = (0u64..1 << extra.len())
            .map(|bits| {
                let mut a = core.clone();
                for (k, &e) in extra.iter().enumerate() {
                    if bits >> k & 1 == 1 {
                        a.insert(e);
                    }
                }
                a
            })
            .filter(|a| !a.is_empty())
            .collect();
        options.sort_by_key(FocalSet::len);
        fixed[xi] = options[0].clone();
        free.push((xi, options));
    }

    // Row i is complete once its last member configuration is assigned.
    let last_member: Vec<usize> = rows
        .iter()
        .map(|(row, _, _)| free.iter().rposition(|(xi, _)| row.contains(*xi)).expect("row has members"))
        .collect();

    struct Ctx<'c> {
        rows: &'c [(&'c FocalSet, &'c FocalSet, Rational)],
        free: &'c [(usize, Vec<FocalSet>)],
        last_member: &'c [usize],
        current: Vec<FocalSet>,
        best: Option<(Rational, Vec<FocalSet>)>,
        universe: usize,
    }

    fn unions(ctx: &Ctx<'_>, depth: usize) -> Vec<FocalSet> {
        ctx.rows
            .iter()
            .map(|(row, _, _)| {
                let mut u = FocalSet::empty(ctx.universe);
                for (xi, _) in &ctx.free[..depth] {
                    if row.contains(*xi) {
                        u.union_with(&ctx.current[*xi]);
                    }
                }
                u
            })
            .collect()
    }

    fn bound(ctx: &Ctx<'_>, unions: &[FocalSet]) -> Rational {
        ctx.rows
            .iter()
            .zip(unions)
            .map(|((_, r, mass), u)| mass * Rational::new(BigInt::from(r.len()), BigInt::from(r.union(u).len())))
            .sum()
    }

    fn dfs(ctx: &mut Ctx<'_>, depth: usize) {
        let us = unions(ctx, depth);
        for (i, (_, r, _)) in ctx.rows.iter().enumerate() {
            if ctx.last_member[i] < depth && !r.is_subset(&us[i]) {
                return;
            }
        }
        let b = bound(ctx, &us);
        if ctx.best.as_ref().is_some_and(|(best, _)| b <= *best) {
            return;
        }
        if depth == ctx.free.len() {
            // All rows are complete and covered, so the bound is exact.
            ctx.best = Some((b, ctx.current.clone()));
            return;
        }
        let (xi, options) = (&ctx.free[depth].0, ctx.free[depth].1.clone());
        for a in options {
            ctx.current[*xi] = a;
            dfs(ctx, depth + 1);
            if ctx.best.as_ref().is_some_and(|(best, _)| best.is_one()) {
                return;
            }
        }
    }

    let mut ctx =
        Ctx { rows: &rows, free: &free, last_member: &last_member, current: fixed, best: None, universe: rest };
    dfs(&mut ctx, 0);
    ctx.best.map(|(_, c)| c).unwrap_or_else(|| union_cover(split, selection))
}
