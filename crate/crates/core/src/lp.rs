//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Every optimal solve is checked before it is returned: primal and dual
//! feasibility, equal objectives, and complementary slackness, all exactly.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{format_rational, BigRational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Max,
    Min,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Bound {
    Free,
    NonNeg,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub sense: Sense,
    pub rhs: BigRational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    direction: Direction,
    cost: Vec<BigRational>,
    bounds: Vec<Bound>,
    constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Primal and dual vectors are empty unless the status is optimal.
#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub objective: BigRational,
    pub primal: Vec<BigRational>,
    /// One multiplier per constraint, in the sign convention of the stated
    /// direction: for a max problem `y ≥ 0` on `≤` rows and `y ≤ 0` on `≥` rows.
    pub dual: Vec<BigRational>,
}

impl LpSolution {
    pub fn into_optimal(self) -> Result<Self> {
        match self.status {
            LpStatus::Optimal => Ok(self),
            LpStatus::Infeasible => Err(Error::LpStatus("infeasible")),
            LpStatus::Unbounded => Err(Error::LpStatus("unbounded")),
        }
    }
}

impl LinearProgram {
    /// All variables start free.
    pub fn new(direction: Direction, cost: Vec<BigRational>) -> Self {
        let bounds = vec![Bound::Free; cost.len()];
        LinearProgram {
            direction,
            cost,
            bounds,
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.cost.len()
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn set_bound(&mut self, var: usize, bound: Bound) -> Result<()> {
        let slot = self
            .bounds
            .get_mut(var)
            .ok_or_else(|| Error::Precondition(format!("variable {var} out of range")))?;
        *slot = bound;
        Ok(())
    }

    pub fn add_constraint(&mut self, coeffs: Vec<BigRational>, sense: Sense, rhs: BigRational) -> Result<()> {
        if coeffs.len() != self.cost.len() {
            return Err(Error::ArityMismatch {
                expected: self.cost.len(),
                found: coeffs.len(),
            });
        }
        self.constraints.push(Constraint { coeffs, sense, rhs });
        Ok(())
    }

    pub fn solve(&self) -> Result<LpSolution> {
        let sol = Tableau::build(self).run()?;
        if sol.status == LpStatus::Optimal {
            self.certify(&sol)?;
        }
        Ok(sol)
    }

    fn objective_value(&self, x: &[BigRational]) -> BigRational {
        dot(&self.cost, x)
    }

    /// Exact optimality certificate; any failure is a solver bug.
    fn certify(&self, sol: &LpSolution) -> Result<()> {
        let fail = |what: String| Err(Error::Internal(format!("simplex certificate: {what}")));
        let (x, y) = (&sol.primal, &sol.dual);
        let sign = match self.direction {
            Direction::Max => BigRational::from_integer(1.into()),
            Direction::Min => BigRational::from_integer((-1).into()),
        };
        for (j, b) in self.bounds.iter().enumerate() {
            if *b == Bound::NonNeg && x[j].is_negative() {
                return fail(format!("x[{j}] negative"));
            }
        }
        for (i, c) in self.constraints.iter().enumerate() {
            let lhs = dot(&c.coeffs, x);
            let ok = match c.sense {
                Sense::Le => lhs <= c.rhs,
                Sense::Ge => lhs >= c.rhs,
                Sense::Eq => lhs == c.rhs,
            };
            if !ok {
                return fail(format!("row {i} violated"));
            }
            // in max orientation: y ≥ 0 on ≤, y ≤ 0 on ≥
            let ys = &y[i] * &sign;
            let sign_ok = match c.sense {
                Sense::Le => !ys.is_negative(),
                Sense::Ge => !ys.is_positive(),
                Sense::Eq => true,
            };
            if !sign_ok {
                return fail(format!("dual {i} has wrong sign"));
            }
            if !(&y[i] * (lhs - &c.rhs)).is_zero() {
                return fail(format!("slackness on row {i}"));
            }
        }
        for j in 0..self.num_vars() {
            let aty: BigRational = self
                .constraints
                .iter()
                .zip(y)
                .fold(BigRational::zero(), |acc, (c, yi)| acc + &c.coeffs[j] * yi);
            let reduced = (aty - &self.cost[j]) * &sign;
            let ok = match self.bounds[j] {
                Bound::Free => reduced.is_zero(),
                Bound::NonNeg => !reduced.is_negative() && (&reduced * &x[j]).is_zero(),
            };
            if !ok {
                return fail(format!("dual constraint for x[{j}]"));
            }
        }
        let dual_obj = self
            .constraints
            .iter()
            .zip(y)
            .fold(BigRational::zero(), |acc, (c, yi)| acc + &c.rhs * yi);
        if dual_obj != sol.objective || self.objective_value(x) != sol.objective {
            return fail("objectives differ".into());
        }
        Ok(())
    }
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (u, v)| {
        if u.is_zero() || v.is_zero() {
            acc
        } else {
            acc + u * v
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ColKind {
    Plus(usize),
    Minus(usize),
    Slack,
    Artificial,
}

struct Tableau<'a> {
    lp: &'a LinearProgram,
    rows: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
    kinds: Vec<ColKind>,
    basis: Vec<usize>,
    /// Column holding the unit vector of each row, for reading duals.
    unit_col: Vec<usize>,
    flipped: Vec<bool>,
}

impl<'a> Tableau<'a> {
    fn build(lp: &'a LinearProgram) -> Self {
        let mut kinds = Vec::new();
        for (j, b) in lp.bounds.iter().enumerate() {
            kinds.push(ColKind::Plus(j));
            if *b == Bound::Free {
                kinds.push(ColKind::Minus(j));
            }
        }
        let m = lp.constraints.len();
        let mut flipped = Vec::with_capacity(m);
        let mut senses = Vec::with_capacity(m);
        for c in &lp.constraints {
            let f = c.rhs.is_negative();
            flipped.push(f);
            senses.push(match (c.sense, f) {
                (Sense::Le, true) => Sense::Ge,
                (Sense::Ge, true) => Sense::Le,
                (s, _) => s,
            });
        }
        let mut extra: Vec<(usize, ColKind, i64)> = Vec::new();
        let mut unit_col = vec![0; m];
        let mut basis = vec![0; m];
        let base = kinds.len();
        for (i, s) in senses.iter().enumerate() {
            match s {
                Sense::Le => {
                    unit_col[i] = base + extra.len();
                    extra.push((i, ColKind::Slack, 1));
                }
                Sense::Ge => {
                    extra.push((i, ColKind::Slack, -1));
                    unit_col[i] = base + extra.len();
                    extra.push((i, ColKind::Artificial, 1));
                }
                Sense::Eq => {
                    unit_col[i] = base + extra.len();
                    extra.push((i, ColKind::Artificial, 1));
                }
            }
            basis[i] = unit_col[i];
        }
        kinds.extend(extra.iter().map(|e| e.1));
        let width = kinds.len();
        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        for (i, c) in lp.constraints.iter().enumerate() {
            let mut row = vec![BigRational::zero(); width];
            for (col, kind) in kinds[..base].iter().enumerate() {
                row[col] = match kind {
                    ColKind::Plus(j) => c.coeffs[*j].clone(),
                    ColKind::Minus(j) => -c.coeffs[*j].clone(),
                    _ => unreachable!(),
                };
            }
            let mut b = c.rhs.clone();
            if flipped[i] {
                row[..base].iter_mut().for_each(|v| *v = -v.clone());
                b = -b;
            }
            for (k, &(r, _, v)) in extra.iter().enumerate() {
                if r == i {
                    row[base + k] = BigRational::from_integer(v.into());
                }
            }
            rows.push(row);
            rhs.push(b);
        }
        Tableau {
            lp,
            rows,
            rhs,
            kinds,
            basis,
            unit_col,
            flipped,
        }
    }

    /// Reduced costs `c_B B⁻¹ A_j − c_j` for a maximization objective.
    fn reduced_costs(&self, cost: &[BigRational]) -> Vec<BigRational> {
        let mut r: Vec<BigRational> = cost.iter().map(|c| -c.clone()).collect();
        for (i, &b) in self.basis.iter().enumerate() {
            if cost[b].is_zero() {
                continue;
            }
            for (j, v) in self.rows[i].iter().enumerate() {
                if !v.is_zero() {
                    r[j] += &cost[b] * v;
                }
            }
        }
        r
    }

    fn pivot(&mut self, row: usize, col: usize, reduced: &mut [BigRational]) {
        let p = self.rows[row][col].clone();
        self.rows[row].iter_mut().for_each(|v| {
            if !v.is_zero() {
                *v /= &p
            }
        });
        self.rhs[row] /= &p;
        let support: Vec<usize> = (0..self.rows[row].len())
            .filter(|&j| !self.rows[row][j].is_zero())
            .collect();
        let (prow, prhs) = (self.rows[row].clone(), self.rhs[row].clone());
        for i in 0..self.rows.len() {
            if i == row || self.rows[i][col].is_zero() {
                continue;
            }
            let f = self.rows[i][col].clone();
            for &j in &support {
                let d = &f * &prow[j];
                self.rows[i][j] -= d;
            }
            self.rhs[i] -= &f * &prhs;
        }
        if !reduced[col].is_zero() {
            let f = reduced[col].clone();
            for &j in &support {
                let d = &f * &prow[j];
                reduced[j] -= d;
            }
        }
        self.basis[row] = col;
    }

    /// Bland's rule; `allowed` filters entering columns. Returns false if unbounded.
    fn optimize(&mut self, cost: &[BigRational], allowed: impl Fn(ColKind) -> bool) -> bool {
        let mut reduced = self.reduced_costs(cost);
        loop {
            let Some(enter) = (0..reduced.len()).find(|&j| reduced[j].is_negative() && allowed(self.kinds[j])) else {
                return true;
            };
            let mut leave: Option<(usize, BigRational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((row, _)) = leave else {
                return false;
            };
            self.pivot(row, enter, &mut reduced);
        }
    }

    fn run(mut self) -> Result<LpSolution> {
        let width = self.kinds.len();
        let is_art = |k: ColKind| k == ColKind::Artificial;
        if self.kinds.iter().any(|&k| is_art(k)) {
            let phase1: Vec<BigRational> = self
                .kinds
                .iter()
                .map(|&k| BigRational::from_integer(if is_art(k) { (-1).into() } else { 0.into() }))
                .collect();
            self.optimize(&phase1, |_| true);
            let infeasible = self
                .basis
                .iter()
                .zip(&self.rhs)
                .any(|(&b, v)| is_art(self.kinds[b]) && !v.is_zero());
            if infeasible {
                return Ok(self.status_only(LpStatus::Infeasible));
            }
            // drive zero-level artificials out where possible
            for i in 0..self.rows.len() {
                if !is_art(self.kinds[self.basis[i]]) {
                    continue;
                }
                if let Some(col) = (0..width).find(|&j| !is_art(self.kinds[j]) && !self.rows[i][j].is_zero()) {
                    let mut dummy = vec![BigRational::zero(); width];
                    self.pivot(i, col, &mut dummy);
                }
            }
        }
        let sign = match self.lp.direction {
            Direction::Max => BigRational::from_integer(1.into()),
            Direction::Min => BigRational::from_integer((-1).into()),
        };
        let cost: Vec<BigRational> = self
            .kinds
            .iter()
            .map(|k| match k {
                ColKind::Plus(j) => &self.lp.cost[*j] * &sign,
                ColKind::Minus(j) => -(&self.lp.cost[*j] * &sign),
                _ => BigRational::zero(),
            })
            .collect();
        if !self.optimize(&cost, |k| !is_art(k)) {
            return Ok(self.status_only(LpStatus::Unbounded));
        }
        let reduced = self.reduced_costs(&cost);
        let mut primal = vec![BigRational::zero(); self.lp.num_vars()];
        for (i, &b) in self.basis.iter().enumerate() {
            match self.kinds[b] {
                ColKind::Plus(j) => primal[j] += &self.rhs[i],
                ColKind::Minus(j) => primal[j] -= &self.rhs[i],
                _ => {}
            }
        }
        let dual = (0..self.rows.len())
            .map(|i| {
                let y = &reduced[self.unit_col[i]] * &sign;
                if self.flipped[i] {
                    -y
                } else {
                    y
                }
            })
            .collect();
        let objective = self.lp.objective_value(&primal);
        Ok(LpSolution {
            status: LpStatus::Optimal,
            objective,
            primal,
            dual,
        })
    }

    fn status_only(&self, status: LpStatus) -> LpSolution {
        LpSolution {
            status,
            objective: BigRational::zero(),
            primal: Vec::new(),
            dual: Vec::new(),
        }
    }
}

fn join(v: &[BigRational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(" ")
}

/// Plain-text dump: direction and cost, one constraint per line, then bounds.
impl fmt::Display for LinearProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dir = match self.direction {
            Direction::Max => "max",
            Direction::Min => "min",
        };
        writeln!(f, "{dir}: {}", join(&self.cost))?;
        for c in &self.constraints {
            let s = match c.sense {
                Sense::Le => "<=",
                Sense::Eq => "=",
                Sense::Ge => ">=",
            };
            writeln!(f, "{} {s} {}", join(&c.coeffs), format_rational(&c.rhs))?;
        }
        let b: Vec<&str> = self
            .bounds
            .iter()
            .map(|b| match b {
                Bound::Free => "free",
                Bound::NonNeg => "nonneg",
            })
            .collect();
        writeln!(f, "bounds: {}", b.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn one_constraint() {
        let mut lp = LinearProgram::new(Direction::Max, vec![int(1)]);
        lp.add_constraint(vec![int(1)], Sense::Le, int(3)).unwrap();
        let s = lp.solve().unwrap().into_optimal().unwrap();
        assert_eq!(s.objective, int(3));
        assert_eq!(s.dual, vec![int(1)]);
    }

    #[test]
    fn best_constant_for_plus_minus_one() {
        // vars (c, eps): min eps, |c - 1| <= eps, |c + 1| <= eps
        let mut lp = LinearProgram::new(Direction::Min, vec![int(0), int(1)]);
        for v in [1, -1] {
            lp.add_constraint(vec![int(1), int(-1)], Sense::Le, int(v)).unwrap();
            lp.add_constraint(vec![int(1), int(1)], Sense::Ge, int(v)).unwrap();
        }
        assert_eq!(lp.solve().unwrap().objective, int(1));
    }

    #[test]
    fn statuses() {
        let mut lp = LinearProgram::new(Direction::Max, vec![int(1)]);
        lp.set_bound(0, Bound::NonNeg).unwrap();
        assert_eq!(lp.solve().unwrap().status, LpStatus::Unbounded);
        lp.add_constraint(vec![int(1)], Sense::Le, int(-1)).unwrap();
        assert_eq!(lp.solve().unwrap().status, LpStatus::Infeasible);
        assert!(lp.solve().unwrap().into_optimal().is_err());
    }

    #[test]
    fn equality_and_degenerate_rows() {
        // x + y = 2 twice (redundant), x - y >= 0, max y
        let mut lp = LinearProgram::new(Direction::Max, vec![int(0), int(1)]);
        lp.add_constraint(vec![int(1), int(1)], Sense::Eq, int(2)).unwrap();
        lp.add_constraint(vec![int(2), int(2)], Sense::Eq, int(4)).unwrap();
        lp.add_constraint(vec![int(1), int(-1)], Sense::Ge, int(0)).unwrap();
        let s = lp.solve().unwrap().into_optimal().unwrap();
        assert_eq!(s.objective, int(1));
        assert_eq!(s.primal, vec![int(1), int(1)]);
    }

    #[test]
    fn dump_lists_every_row() {
        let mut lp = LinearProgram::new(Direction::Min, vec![rat(1, 2)]);
        lp.add_constraint(vec![int(1)], Sense::Ge, int(-3)).unwrap();
        let text = lp.to_string();
        assert_eq!(text, "min: 1/2\n1/1 >= -3/1\nbounds: free\n");
    }

    fn random_lp(entries: &[i64], rhs: &[i64], cost: &[i64], senses: &[u8]) -> LinearProgram {
        let n = cost.len();
        let mut lp = LinearProgram::new(Direction::Max, cost.iter().map(|&c| int(c)).collect());
        for j in 0..n {
            if j % 2 == 0 {
                lp.set_bound(j, Bound::NonNeg).unwrap();
            }
        }
        for (i, row) in entries.chunks(n).enumerate() {
            let sense = [Sense::Le, Sense::Ge, Sense::Eq][senses[i] as usize % 3];
            lp.add_constraint(row.iter().map(|&v| int(v)).collect(), sense, int(rhs[i])).unwrap();
        }
        // a box keeps most instances bounded
        for j in 0..n {
            let mut e = vec![int(0); n];
            e[j] = int(1);
            lp.add_constraint(e.clone(), Sense::Le, int(10)).unwrap();
            lp.add_constraint(e, Sense::Ge, int(-10)).unwrap();
        }
        lp
    }

    proptest! {
        // certify() runs inside solve, so any optimal solution here already
        // passed the exact duality checks
        #[test]
        fn random_programs_certify(
            entries in proptest::collection::vec(-4i64..5, 12),
            rhs in proptest::collection::vec(-6i64..7, 4),
            cost in proptest::collection::vec(-3i64..4, 3),
            senses in proptest::collection::vec(0u8..3, 4),
        ) {
            let lp = random_lp(&entries, &rhs, &cost, &senses);
            let s = lp.solve().unwrap();
            prop_assert!(s.status != LpStatus::Unbounded);
        }

        #[test]
        fn row_permutation_keeps_objective(
            entries in proptest::collection::vec(-4i64..5, 12),
            rhs in proptest::collection::vec(-6i64..7, 4),
            cost in proptest::collection::vec(-3i64..4, 3),
            senses in proptest::collection::vec(0u8..3, 4),
        ) {
            let lp = random_lp(&entries, &rhs, &cost, &senses);
            let mut rev = lp.clone();
            rev.constraints.reverse();
            let (a, b) = (lp.solve().unwrap(), rev.solve().unwrap());
            prop_assert_eq!(a.status, b.status);
            prop_assert_eq!(a.objective, b.objective);
        }
    }
}
