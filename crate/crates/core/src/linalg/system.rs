//! Integer and rational linear systems.
//!
//! Equalities are always integral. Inequalities read `coeffs · x >= rhs`
//! (or `>` when strict) with an integral left side and a rational right side.
//! Rational questions are decided by Fourier–Motzkin elimination; integral
//! equalities by Hermite forms; bounded lattice search combines both.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::matrix::{dot, IntegerMatrix};
use super::normal_form::{hermite_normal_form, lattice_basis};
use super::LinalgError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equality {
    pub coeffs: Vec<BigInt>,
    pub rhs: BigInt,
}

/// `coeffs · x >= rhs`, or `coeffs · x > rhs` when `strict`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub coeffs: Vec<BigInt>,
    pub rhs: BigRational,
    pub strict: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearSystem {
    dim: usize,
    equalities: Vec<Equality>,
    inequalities: Vec<Inequality>,
}

impl LinearSystem {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            ..Self::default()
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn equalities(&self) -> &[Equality] {
        &self.equalities
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.inequalities
    }

    fn check_len(&self, len: usize) -> Result<(), LinalgError> {
        if len == self.dim {
            Ok(())
        } else {
            Err(LinalgError::DimensionMismatch {
                expected: self.dim,
                found: len,
            })
        }
    }

    pub fn add_equality(&mut self, coeffs: Vec<BigInt>, rhs: BigInt) -> Result<(), LinalgError> {
        self.check_len(coeffs.len())?;
        self.equalities.push(Equality { coeffs, rhs });
        Ok(())
    }

    pub fn add_inequality(
        &mut self,
        coeffs: Vec<BigInt>,
        rhs: BigRational,
        strict: bool,
    ) -> Result<(), LinalgError> {
        self.check_len(coeffs.len())?;
        self.inequalities.push(Inequality {
            coeffs,
            rhs,
            strict,
        });
        Ok(())
    }

    pub fn equality_i64(mut self, coeffs: &[i64], rhs: i64) -> Result<Self, LinalgError> {
        self.add_equality(to_big(coeffs), BigInt::from(rhs))?;
        Ok(self)
    }

    pub fn at_least_i64(mut self, coeffs: &[i64], rhs: i64) -> Result<Self, LinalgError> {
        self.add_inequality(to_big(coeffs), BigRational::from_integer(rhs.into()), false)?;
        Ok(self)
    }

    pub fn greater_i64(mut self, coeffs: &[i64], rhs: i64) -> Result<Self, LinalgError> {
        self.add_inequality(to_big(coeffs), BigRational::from_integer(rhs.into()), true)?;
        Ok(self)
    }

    pub fn is_satisfied_by(&self, x: &[BigRational]) -> bool {
        if x.len() != self.dim {
            return false;
        }
        let eval = |c: &[BigInt]| -> BigRational {
            c.iter()
                .zip(x)
                .map(|(a, b)| b * BigRational::from_integer(a.clone()))
                .sum()
        };
        self.equalities
            .iter()
            .all(|e| eval(&e.coeffs) == BigRational::from_integer(e.rhs.clone()))
            && self.inequalities.iter().all(|i| {
                let v = eval(&i.coeffs);
                if i.strict {
                    v > i.rhs
                } else {
                    v >= i.rhs
                }
            })
    }

    pub fn is_satisfied_by_integers(&self, x: &[BigInt]) -> bool {
        if x.len() != self.dim {
            return false;
        }
        self.equalities.iter().all(|e| dot(&e.coeffs, x) == e.rhs)
            && self.inequalities.iter().all(|i| {
                let v = BigRational::from_integer(dot(&i.coeffs, x));
                if i.strict {
                    v > i.rhs
                } else {
                    v >= i.rhs
                }
            })
    }
}

fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntegerSolution {
    /// Every solution is `particular + Σ t_i kernel_basis[i]` for integers `t_i`.
    Solvable {
        particular: Vec<BigInt>,
        kernel_basis: Vec<Vec<BigInt>>,
    },
    Unsolvable,
}

impl IntegerSolution {
    pub fn is_solvable(&self) -> bool {
        matches!(self, IntegerSolution::Solvable { .. })
    }
}

/// Decides the equality part of `sys` over the integers.
///
/// The kernel basis is in Hermite form and the particular solution is
/// reduced against it, so the output is canonical for the solution set.
pub fn solve_integer_system(sys: &LinearSystem) -> IntegerSolution {
    solve_equalities(sys.dim, &sys.equalities)
}

pub(crate) fn solve_equalities(dim: usize, eqs: &[Equality]) -> IntegerSolution {
    let k = eqs.len();
    let mut at = IntegerMatrix::zeros(dim, k);
    for (e, eq) in eqs.iter().enumerate() {
        for j in 0..dim {
            at[(j, e)] = eq.coeffs[j].clone();
        }
    }
    let hf = hermite_normal_form(&at);
    let rank = hf.rank();
    let pivots = hf.pivots();
    let h = &hf.h;

    let mut y: Vec<BigInt> = Vec::with_capacity(rank);
    for (j, &e) in pivots.iter().enumerate() {
        let mut s = eqs[e].rhs.clone();
        for (jj, yj) in y.iter().enumerate() {
            s -= &h[(jj, e)] * yj;
        }
        let (q, r) = s.div_rem(&h[(j, e)]);
        if !r.is_zero() {
            return IntegerSolution::Unsolvable;
        }
        y.push(q);
    }
    for (e, eq) in eqs.iter().enumerate() {
        let lhs: BigInt = y.iter().enumerate().map(|(j, yj)| &h[(j, e)] * yj).sum();
        if lhs != eq.rhs {
            return IntegerSolution::Unsolvable;
        }
    }

    let mut particular = vec![BigInt::zero(); dim];
    for (j, yj) in y.iter().enumerate() {
        for (i, x) in particular.iter_mut().enumerate() {
            *x += yj * &hf.u[(j, i)];
        }
    }
    let kernel_rows: Vec<Vec<BigInt>> = (rank..dim).map(|j| hf.u.row(j).to_vec()).collect();
    let kernel_basis = lattice_basis(dim, &kernel_rows);
    for b in &kernel_basis {
        let c = b.iter().position(|x| !x.is_zero()).expect("nonzero basis row");
        let q = particular[c].div_floor(&b[c]);
        if !q.is_zero() {
            for (x, bi) in particular.iter_mut().zip(b) {
                *x -= &q * bi;
            }
        }
    }
    IntegerSolution::Solvable {
        particular,
        kernel_basis,
    }
}

/// Solves `a * x = b` over the integers (`a` is `rows x cols`).
pub(crate) fn solve_matrix(a: &IntegerMatrix, b: &[BigInt]) -> IntegerSolution {
    let eqs: Vec<Equality> = (0..a.rows())
        .map(|i| Equality {
            coeffs: a.row(i).to_vec(),
            rhs: b[i].clone(),
        })
        .collect();
    solve_equalities(a.cols(), &eqs)
}

/// Integer kernel of `a` (vectors `x` with `a * x = 0`), as a Hermite basis.
pub fn integer_kernel(a: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    match solve_matrix(a, &vec![BigInt::zero(); a.rows()]) {
        IntegerSolution::Solvable { kernel_basis, .. } => kernel_basis,
        IntegerSolution::Unsolvable => unreachable!("homogeneous system is always solvable"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<BigRational>),
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

/// Exact rational feasibility with a witness point.
pub fn rational_feasible(sys: &LinearSystem) -> Feasibility {
    let rows = fm::from_system(sys);
    match fm::solve(rows, sys.dim) {
        Some(x) => {
            debug_assert!(sys.is_satisfied_by(&x));
            Feasibility::Feasible(x)
        }
        None => Feasibility::Infeasible,
    }
}

/// Range of one variable over the rational solution set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    /// `(bound, strict)`; `None` means unbounded.
    pub lower: Option<(BigRational, bool)>,
    pub upper: Option<(BigRational, bool)>,
}

impl Interval {
    fn integer_range(&self) -> (Option<BigInt>, Option<BigInt>) {
        let lo = self.lower.as_ref().map(|(b, strict)| {
            if *strict && b.is_integer() {
                b.to_integer() + 1
            } else {
                b.ceil().to_integer()
            }
        });
        let hi = self.upper.as_ref().map(|(b, strict)| {
            if *strict && b.is_integer() {
                b.to_integer() - 1
            } else {
                b.floor().to_integer()
            }
        });
        (lo, hi)
    }
}

/// Projection of the rational solution set onto variable `var`; `None` when empty.
pub fn rational_interval(sys: &LinearSystem, var: usize) -> Option<Interval> {
    assert!(var < sys.dim, "variable index out of range");
    let mut rows = fm::from_system(sys);
    for k in (0..sys.dim).rev() {
        if k != var {
            rows = fm::eliminate(rows, k)?;
        }
    }
    fm::interval(&rows, var)
}

/// All integer solutions with every coordinate in `[-box_bound, box_bound]`,
/// in lexicographic order.
pub fn lattice_points_bounded(sys: &LinearSystem, box_bound: u64) -> Vec<Vec<BigInt>> {
    let b = BigInt::from(box_bound);
    let lower = vec![-b.clone(); sys.dim];
    let upper = vec![b; sys.dim];
    lattice_points_in_box(sys, &lower, &upper, None)
}

/// Integer solutions inside the box `lower <= x <= upper`, sorted
/// lexicographically. With `limit`, the search stops after that many points
/// (the result is then sorted but not necessarily the lexicographic prefix).
pub(crate) fn lattice_points_in_box(
    sys: &LinearSystem,
    lower: &[BigInt],
    upper: &[BigInt],
    limit: Option<usize>,
) -> Vec<Vec<BigInt>> {
    let (particular, kernel) = match solve_integer_system(sys) {
        IntegerSolution::Solvable {
            particular,
            kernel_basis,
        } => (particular, kernel_basis),
        IntegerSolution::Unsolvable => return Vec::new(),
    };
    let n = sys.dim;
    let k = kernel.len();
    let rat = |x: BigInt| BigRational::from_integer(x);

    // x = particular + Σ t_j kernel[j]; rewrite everything in t
    let mut rows = Vec::new();
    for ineq in &sys.inequalities {
        let coeffs = kernel.iter().map(|b| rat(dot(&ineq.coeffs, b))).collect();
        let rhs = &ineq.rhs - rat(dot(&ineq.coeffs, &particular));
        rows.push(fm::Row::new(coeffs, rhs, if ineq.strict { fm::Rel::Gt } else { fm::Rel::Ge }));
    }
    for i in 0..n {
        let coeffs: Vec<BigRational> = kernel.iter().map(|b| rat(b[i].clone())).collect();
        let neg: Vec<BigRational> = coeffs.iter().map(|c| -c).collect();
        rows.push(fm::Row::new(coeffs, rat(&lower[i] - &particular[i]), fm::Rel::Ge));
        rows.push(fm::Row::new(neg, rat(&particular[i] - &upper[i]), fm::Rel::Ge));
    }

    let mut params = Vec::new();
    let mut found_t = Vec::new();
    search(rows, k, &mut params, &mut found_t, limit);

    let mut out: Vec<Vec<BigInt>> = found_t
        .into_iter()
        .map(|t| {
            let mut x = particular.clone();
            for (tj, b) in t.iter().zip(&kernel) {
                for (xi, bi) in x.iter_mut().zip(b) {
                    *xi += tj * bi;
                }
            }
            x
        })
        .filter(|x| {
            sys.is_satisfied_by_integers(x)
                && x.iter().zip(lower).all(|(a, l)| a >= l)
                && x.iter().zip(upper).all(|(a, u)| a <= u)
        })
        .collect();
    out.sort();
    out
}

/// Depth-first enumeration of integer points; `rows` are in the remaining
/// `nvars` variables.
fn search(
    rows: Vec<fm::Row>,
    nvars: usize,
    prefix: &mut Vec<BigInt>,
    out: &mut Vec<Vec<BigInt>>,
    limit: Option<usize>,
) {
    if limit.is_some_and(|l| out.len() >= l) {
        return;
    }
    if nvars == 0 {
        if rows.iter().all(fm::Row::constant_holds) {
            out.push(prefix.clone());
        }
        return;
    }
    let mut projected = rows.clone();
    for k in (1..nvars).rev() {
        match fm::eliminate(projected, k) {
            Some(r) => projected = r,
            None => return,
        }
    }
    let Some(iv) = fm::interval(&projected, 0) else {
        return;
    };
    let (Some(lo), Some(hi)) = iv.integer_range() else {
        unreachable!("search box bounds every parameter");
    };
    let mut v = lo;
    while v <= hi {
        let value = BigRational::from_integer(v.clone());
        let reduced: Option<Vec<fm::Row>> = rows
            .iter()
            .map(|r| r.substitute_first(&value))
            .filter(|r| !r.is_trivial())
            .map(|r| if r.is_constant() && !r.constant_holds() { None } else { Some(r) })
            .collect();
        if let Some(reduced) = reduced {
            prefix.push(v.clone());
            search(reduced, nvars - 1, prefix, out, limit);
            prefix.pop();
            if limit.is_some_and(|l| out.len() >= l) {
                return;
            }
        }
        v += 1;
    }
}

mod fm {
    use super::*;

    #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
    pub(super) enum Rel {
        Eq,
        Ge,
        Gt,
    }

    /// `coeffs · x rel rhs`
    #[derive(Clone, Debug, PartialEq, Eq, Hash)]
    pub(super) struct Row {
        pub coeffs: Vec<BigRational>,
        pub rhs: BigRational,
        pub rel: Rel,
    }

    impl Row {
        pub fn new(coeffs: Vec<BigRational>, rhs: BigRational, rel: Rel) -> Self {
            Self { coeffs, rhs, rel }
        }

        pub fn is_constant(&self) -> bool {
            self.coeffs.iter().all(Zero::is_zero)
        }

        pub fn constant_holds(&self) -> bool {
            let zero = BigRational::zero();
            match self.rel {
                Rel::Eq => self.rhs == zero,
                Rel::Ge => zero >= self.rhs,
                Rel::Gt => zero > self.rhs,
            }
        }

        pub fn is_trivial(&self) -> bool {
            self.is_constant() && self.constant_holds()
        }

        /// Fixes the first variable and drops its column.
        pub fn substitute_first(&self, value: &BigRational) -> Row {
            Row {
                coeffs: self.coeffs[1..].to_vec(),
                rhs: &self.rhs - &self.coeffs[0] * value,
                rel: self.rel,
            }
        }

        fn normalized(mut self) -> Row {
            let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).cloned() else {
                return self;
            };
            let scale = if self.rel == Rel::Eq { lead } else { lead.abs() };
            for c in &mut self.coeffs {
                *c = &*c / &scale;
            }
            self.rhs = &self.rhs / &scale;
            self
        }
    }

    pub(super) fn from_system(sys: &LinearSystem) -> Vec<Row> {
        let rat = |x: &BigInt| BigRational::from_integer(x.clone());
        let mut rows: Vec<Row> = sys
            .equalities
            .iter()
            .map(|e| Row::new(e.coeffs.iter().map(rat).collect(), rat(&e.rhs), Rel::Eq))
            .collect();
        rows.extend(sys.inequalities.iter().map(|i| {
            Row::new(
                i.coeffs.iter().map(rat).collect(),
                i.rhs.clone(),
                if i.strict { Rel::Gt } else { Rel::Ge },
            )
        }));
        rows
    }

    /// Normalizes, drops satisfied constants and keeps only the tightest
    /// inequality per direction. `None` on a violated constant row.
    fn tidy(rows: Vec<Row>) -> Option<Vec<Row>> {
        let mut eqs: Vec<Row> = Vec::new();
        let mut best: HashMap<Vec<BigRational>, (BigRational, Rel)> = HashMap::new();
        let mut order: Vec<Vec<BigRational>> = Vec::new();
        for row in rows {
            let row = row.normalized();
            if row.is_constant() {
                if !row.constant_holds() {
                    return None;
                }
                continue;
            }
            if row.rel == Rel::Eq {
                if !eqs.contains(&row) {
                    eqs.push(row);
                }
                continue;
            }
            match best.get_mut(&row.coeffs) {
                Some((rhs, rel)) => {
                    if row.rhs > *rhs || (row.rhs == *rhs && row.rel == Rel::Gt) {
                        *rhs = row.rhs;
                        *rel = row.rel;
                    }
                }
                None => {
                    order.push(row.coeffs.clone());
                    best.insert(row.coeffs, (row.rhs, row.rel));
                }
            }
        }
        for coeffs in order {
            let (rhs, rel) = best.remove(&coeffs).expect("recorded direction");
            eqs.push(Row::new(coeffs, rhs, rel));
        }
        Some(eqs)
    }

    /// Eliminates variable `k` (its column becomes zero).
    pub(super) fn eliminate(rows: Vec<Row>, k: usize) -> Option<Vec<Row>> {
        let mut rows = tidy(rows)?;
        if let Some(pos) = rows
            .iter()
            .position(|r| r.rel == Rel::Eq && !r.coeffs[k].is_zero())
        {
            let pivot = rows.swap_remove(pos);
            for r in &mut rows {
                if r.coeffs[k].is_zero() {
                    continue;
                }
                let f = &r.coeffs[k] / &pivot.coeffs[k];
                for (c, p) in r.coeffs.iter_mut().zip(&pivot.coeffs) {
                    *c -= &f * p;
                }
                r.rhs -= &f * &pivot.rhs;
            }
            return tidy(rows);
        }
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        let mut rest = Vec::new();
        for r in rows {
            if r.coeffs[k].is_positive() {
                lower.push(r);
            } else if r.coeffs[k].is_negative() {
                upper.push(r);
            } else {
                rest.push(r);
            }
        }
        for l in &lower {
            for u in &upper {
                let a = l.coeffs[k].clone();
                let b = -u.coeffs[k].clone();
                let coeffs = l
                    .coeffs
                    .iter()
                    .zip(&u.coeffs)
                    .map(|(x, y)| x / &a + y / &b)
                    .collect();
                let rhs = &l.rhs / &a + &u.rhs / &b;
                let rel = if l.rel == Rel::Gt || u.rel == Rel::Gt {
                    Rel::Gt
                } else {
                    Rel::Ge
                };
                rest.push(Row::new(coeffs, rhs, rel));
            }
        }
        tidy(rest)
    }

    /// Interval of `var` described by rows in which only `var` may be nonzero.
    pub(super) fn interval(rows: &[Row], var: usize) -> Option<Interval> {
        let mut lower: Option<(BigRational, bool)> = None;
        let mut upper: Option<(BigRational, bool)> = None;
        let tighten_lo = |cur: &mut Option<(BigRational, bool)>, b: BigRational, strict: bool| {
            let replace = match cur {
                None => true,
                Some((c, s)) => b > *c || (b == *c && strict && !*s),
            };
            if replace {
                *cur = Some((b, strict));
            }
        };
        let tighten_hi = |cur: &mut Option<(BigRational, bool)>, b: BigRational, strict: bool| {
            let replace = match cur {
                None => true,
                Some((c, s)) => b < *c || (b == *c && strict && !*s),
            };
            if replace {
                *cur = Some((b, strict));
            }
        };
        for r in rows {
            debug_assert!(r.coeffs.iter().enumerate().all(|(i, c)| i == var || c.is_zero()));
            let a = &r.coeffs[var];
            if a.is_zero() {
                if !r.constant_holds() {
                    return None;
                }
                continue;
            }
            let b = &r.rhs / a;
            match r.rel {
                Rel::Eq => {
                    tighten_lo(&mut lower, b.clone(), false);
                    tighten_hi(&mut upper, b, false);
                }
                Rel::Ge | Rel::Gt => {
                    let strict = r.rel == Rel::Gt;
                    if a.is_positive() {
                        tighten_lo(&mut lower, b, strict);
                    } else {
                        tighten_hi(&mut upper, b, strict);
                    }
                }
            }
        }
        if let (Some((lo, ls)), Some((hi, hs))) = (&lower, &upper) {
            if lo > hi || (lo == hi && (*ls || *hs)) {
                return None;
            }
        }
        Some(Interval { lower, upper })
    }

    /// A point of the interval, preferring small integers.
    fn pick(iv: &Interval) -> BigRational {
        let (lo, hi) = iv.integer_range();
        let zero = BigInt::zero();
        let candidate = match (&lo, &hi) {
            (Some(l), _) if *l > zero => l.clone(),
            (_, Some(h)) if *h < zero => h.clone(),
            _ => zero,
        };
        let fits = lo.as_ref().is_none_or(|l| &candidate >= l)
            && hi.as_ref().is_none_or(|h| &candidate <= h);
        if fits {
            return BigRational::from_integer(candidate);
        }
        // no integer inside: the interval is bounded and narrower than one
        let (l, _) = iv.lower.clone().expect("bounded below");
        let (h, _) = iv.upper.clone().expect("bounded above");
        if l == h {
            l
        } else {
            (l + h) / BigRational::from_integer(BigInt::from(2))
        }
    }

    /// Full elimination followed by back-substitution.
    pub(super) fn solve(rows: Vec<Row>, dim: usize) -> Option<Vec<BigRational>> {
        let mut stages: Vec<Vec<Row>> = vec![Vec::new(); dim];
        let mut current = tidy(rows)?;
        for k in (0..dim).rev() {
            stages[k] = current.clone();
            current = eliminate(current, k)?;
        }
        if !current.iter().all(Row::constant_holds) {
            return None;
        }
        let mut x: Vec<BigRational> = Vec::with_capacity(dim);
        for (k, stage) in stages.iter().enumerate() {
            let substituted: Vec<Row> = stage
                .iter()
                .map(|r| {
                    let mut rhs = r.rhs.clone();
                    for (c, v) in r.coeffs[..k].iter().zip(&x) {
                        rhs -= c * v;
                    }
                    let mut coeffs = vec![BigRational::zero(); r.coeffs.len()];
                    coeffs[k] = r.coeffs[k].clone();
                    Row::new(coeffs, rhs, r.rel)
                })
                .collect();
            let iv = interval(&substituted, k)?;
            x.push(pick(&iv));
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::int_vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn trivial_single_equation() {
        let sys = LinearSystem::new(1).equality_i64(&[1], 0).unwrap();
        assert_eq!(
            solve_integer_system(&sys),
            IntegerSolution::Solvable {
                particular: int_vec(&[0]),
                kernel_basis: vec![]
            }
        );
    }

    #[test]
    fn half_integer_contradiction_is_unsolvable() {
        let sys = LinearSystem::new(3)
            .equality_i64(&[1, 0, 0], 0)
            .unwrap()
            .equality_i64(&[1, 2, 0], 0)
            .unwrap()
            .equality_i64(&[0, 1, 2], -1)
            .unwrap();
        assert_eq!(solve_integer_system(&sys), IntegerSolution::Unsolvable);
    }

    #[test]
    fn particular_solution_is_reduced() {
        let sys = LinearSystem::new(3)
            .equality_i64(&[1, 0, 0], 0)
            .unwrap()
            .equality_i64(&[0, 1, 2], -1)
            .unwrap();
        match solve_integer_system(&sys) {
            IntegerSolution::Solvable {
                particular,
                kernel_basis,
            } => {
                assert_eq!(particular, int_vec(&[0, 1, -1]));
                assert_eq!(kernel_basis, vec![int_vec(&[0, 2, -1])]);
            }
            IntegerSolution::Unsolvable => panic!("system is solvable"),
        }
    }

    #[test]
    fn no_equations_gives_whole_lattice() {
        let sys = LinearSystem::new(2);
        assert_eq!(
            solve_integer_system(&sys),
            IntegerSolution::Solvable {
                particular: int_vec(&[0, 0]),
                kernel_basis: vec![int_vec(&[1, 0]), int_vec(&[0, 1])]
            }
        );
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let err = LinearSystem::new(2).equality_i64(&[1, 2, 3], 0).unwrap_err();
        assert_eq!(err, LinalgError::DimensionMismatch { expected: 2, found: 3 });
        let mut sys = LinearSystem::new(2);
        assert!(sys
            .add_inequality(int_vec(&[1]), BigRational::zero(), false)
            .is_err());
    }

    #[test]
    fn feasibility_examples() {
        let sys = LinearSystem::new(1)
            .at_least_i64(&[1], 0)
            .unwrap()
            .at_least_i64(&[-1], 1)
            .unwrap();
        assert_eq!(rational_feasible(&sys), Feasibility::Infeasible);

        let sys = LinearSystem::new(2)
            .equality_i64(&[1, 0], 0)
            .unwrap()
            .equality_i64(&[0, 2], -1)
            .unwrap();
        assert_eq!(
            rational_feasible(&sys),
            Feasibility::Feasible(vec![q(0, 1), q(-1, 2)])
        );

        // -(1,0) = λ1 (1,0) + λ2 (-1,0), λ >= 0
        let sys = LinearSystem::new(2)
            .equality_i64(&[1, -1], -1)
            .unwrap()
            .equality_i64(&[0, 0], 0)
            .unwrap()
            .at_least_i64(&[1, 0], 0)
            .unwrap()
            .at_least_i64(&[0, 1], 0)
            .unwrap();
        let Feasibility::Feasible(w) = rational_feasible(&sys) else {
            panic!("cone contains -(1,0)");
        };
        assert!(sys.is_satisfied_by(&w));
        assert_eq!(w, vec![q(0, 1), q(1, 1)]);
    }

    #[test]
    fn strict_inequalities_are_honored() {
        let sys = LinearSystem::new(1)
            .greater_i64(&[1], 0)
            .unwrap()
            .greater_i64(&[-1], 0)
            .unwrap();
        assert!(!rational_feasible(&sys).is_feasible());
        let sys = LinearSystem::new(1)
            .greater_i64(&[2], 0)
            .unwrap()
            .greater_i64(&[-2], -1)
            .unwrap();
        let Feasibility::Feasible(w) = rational_feasible(&sys) else {
            panic!("open interval (0, 1/2) is nonempty");
        };
        assert!(sys.is_satisfied_by(&w));
    }

    #[test]
    fn interval_projection() {
        let sys = LinearSystem::new(2)
            .at_least_i64(&[1, 0], 0)
            .unwrap()
            .at_least_i64(&[-1, -1], -3)
            .unwrap()
            .at_least_i64(&[0, 1], 1)
            .unwrap();
        let iv = rational_interval(&sys, 0).unwrap();
        assert_eq!(iv.lower, Some((q(0, 1), false)));
        assert_eq!(iv.upper, Some((q(2, 1), false)));
    }

    #[test]
    fn bounded_lattice_points() {
        let sys = LinearSystem::new(2)
            .equality_i64(&[1, 0], -1)
            .unwrap()
            .at_least_i64(&[0, 1], 0)
            .unwrap();
        assert_eq!(
            lattice_points_bounded(&sys, 2),
            vec![int_vec(&[-1, 0]), int_vec(&[-1, 1]), int_vec(&[-1, 2])]
        );
        let bad = LinearSystem::new(1)
            .at_least_i64(&[1], 0)
            .unwrap()
            .at_least_i64(&[-1], 1)
            .unwrap();
        assert!(lattice_points_bounded(&bad, 3).is_empty());
        assert_eq!(
            lattice_points_bounded(&LinearSystem::new(1), 1),
            vec![int_vec(&[-1]), int_vec(&[0]), int_vec(&[1])]
        );
        assert_eq!(lattice_points_bounded(&LinearSystem::new(0), 4), vec![Vec::<BigInt>::new()]);
    }

    fn random_system(rng: &mut ChaCha8Rng, dim: usize) -> LinearSystem {
        let mut sys = LinearSystem::new(dim);
        for _ in 0..rng.gen_range(0..=2) {
            let c: Vec<i64> = (0..dim).map(|_| rng.gen_range(-3..=3)).collect();
            sys = sys.equality_i64(&c, rng.gen_range(-4..=4)).unwrap();
        }
        for _ in 0..rng.gen_range(0..=3) {
            let c: Vec<i64> = (0..dim).map(|_| rng.gen_range(-3..=3)).collect();
            sys = if rng.gen_bool(0.2) {
                sys.greater_i64(&c, rng.gen_range(-4..=4)).unwrap()
            } else {
                sys.at_least_i64(&c, rng.gen_range(-4..=4)).unwrap()
            };
        }
        sys
    }

    fn brute_force(sys: &LinearSystem, bound: i64) -> Vec<Vec<BigInt>> {
        let dim = sys.dim();
        let mut out = Vec::new();
        let mut cur = vec![-bound; dim];
        loop {
            let x = int_vec(&cur);
            if sys.is_satisfied_by_integers(&x) {
                out.push(x);
            }
            let mut i = dim;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < bound {
                    cur[i] += 1;
                    for c in cur.iter_mut().skip(i + 1) {
                        *c = -bound;
                    }
                    break;
                }
            }
        }
    }

    #[test]
    fn integer_solver_matches_box_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..150 {
            let dim = rng.gen_range(1..=3);
            let mut sys = LinearSystem::new(dim);
            for _ in 0..rng.gen_range(1..=3) {
                let c: Vec<i64> = (0..dim).map(|_| rng.gen_range(-4..=4)).collect();
                sys = sys.equality_i64(&c, rng.gen_range(-5..=5)).unwrap();
            }
            let hits = brute_force(&sys, 10);
            match solve_integer_system(&sys) {
                IntegerSolution::Solvable {
                    particular,
                    kernel_basis,
                } => {
                    assert!(sys.is_satisfied_by_integers(&particular));
                    let zero = LinearSystem {
                        dim,
                        equalities: sys
                            .equalities()
                            .iter()
                            .map(|e| Equality {
                                coeffs: e.coeffs.clone(),
                                rhs: BigInt::zero(),
                            })
                            .collect(),
                        inequalities: vec![],
                    };
                    for b in &kernel_basis {
                        assert!(zero.is_satisfied_by_integers(b));
                    }
                    // every box solution differs from the particular by a kernel combination
                    for h in &hits {
                        let diff: Vec<BigInt> =
                            h.iter().zip(&particular).map(|(a, b)| a - b).collect();
                        let mut rows = kernel_basis.clone();
                        let before = lattice_basis(dim, &rows);
                        rows.push(diff);
                        assert_eq!(lattice_basis(dim, &rows), before);
                    }
                    // a small particular always lands in the box for these sizes
                    if particular.iter().all(|x| x.abs() <= BigInt::from(10)) {
                        assert!(!hits.is_empty());
                    }
                }
                IntegerSolution::Unsolvable => assert!(hits.is_empty(), "{sys:?}"),
            }
        }
    }

    /// Independent oracle: enumerate vertices of the closed relaxation (all
    /// intersections of `dim` constraint or box planes that satisfy it); the
    /// system is feasible iff the relaxation is nonempty and the centroid of
    /// its vertices, a relative-interior point, satisfies the strict system.
    fn vertex_oracle(sys: &LinearSystem, bound: i64) -> bool {
        use num_traits::One;
        let dim = sys.dim();
        let mut planes: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
        let rat = |x: &BigInt| BigRational::from_integer(x.clone());
        for e in sys.equalities() {
            planes.push((e.coeffs.iter().map(rat).collect(), rat(&e.rhs)));
        }
        for i in sys.inequalities() {
            planes.push((i.coeffs.iter().map(rat).collect(), i.rhs.clone()));
        }
        for d in 0..dim {
            let mut c = vec![BigRational::zero(); dim];
            c[d] = BigRational::one();
            planes.push((c.clone(), q(bound, 1)));
            planes.push((c, q(-bound, 1)));
        }
        let mut relaxed = sys.clone();
        for i in relaxed.inequalities.iter_mut() {
            i.strict = false;
        }
        let mut vertices: Vec<Vec<BigRational>> = Vec::new();
        let idx: Vec<usize> = (0..planes.len()).collect();
        for combo in combinations(&idx, dim) {
            let chosen: Vec<_> = combo.iter().map(|&i| planes[i].clone()).collect();
            if let Some(p) = solve_square(&chosen) {
                if relaxed.is_satisfied_by(&p) && !vertices.contains(&p) {
                    vertices.push(p);
                }
            }
        }
        if vertices.is_empty() {
            return false;
        }
        let mut c = vec![BigRational::zero(); dim];
        for v in &vertices {
            for (a, b) in c.iter_mut().zip(v) {
                *a += b;
            }
        }
        let n = q(vertices.len() as i64, 1);
        let c: Vec<BigRational> = c.into_iter().map(|x| x / &n).collect();
        sys.is_satisfied_by(&c)
    }

    fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if items.len() < k {
            return vec![];
        }
        let mut out = Vec::new();
        for (i, &first) in items.iter().enumerate() {
            for mut rest in combinations(&items[i + 1..], k - 1) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }

    fn solve_square(planes: &[(Vec<BigRational>, BigRational)]) -> Option<Vec<BigRational>> {
        let n = planes.len();
        let mut m: Vec<Vec<BigRational>> = planes
            .iter()
            .map(|(c, r)| {
                let mut row = c.clone();
                row.push(r.clone());
                row
            })
            .collect();
        for col in 0..n {
            let p = (col..n).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, p);
            let pivot = m[col][col].clone();
            for x in m[col].iter_mut() {
                *x = &*x / &pivot;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    let src = m[col].clone();
                    for (x, s) in m[r].iter_mut().zip(&src) {
                        *x -= &f * s;
                    }
                }
            }
        }
        Some(m.into_iter().map(|row| row[n].clone()).collect())
    }

    #[test]
    fn feasibility_matches_vertex_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let dim = rng.gen_range(2..=3);
            let mut sys = random_system(&mut rng, dim);
            // bound the region so the vertex oracle is complete
            for d in 0..dim {
                let mut c = vec![0i64; dim];
                c[d] = 1;
                sys = sys.at_least_i64(&c, -20).unwrap();
                c[d] = -1;
                sys = sys.at_least_i64(&c, -20).unwrap();
            }
            let verdict = rational_feasible(&sys);
            if let Feasibility::Feasible(w) = &verdict {
                assert!(sys.is_satisfied_by(w));
            }
            assert_eq!(verdict.is_feasible(), vertex_oracle(&sys, 20), "{sys:?}");
        }
    }

    #[test]
    fn lattice_search_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let dim = rng.gen_range(1..=3);
            let sys = random_system(&mut rng, dim);
            let bound = rng.gen_range(0..=3);
            assert_eq!(
                lattice_points_bounded(&sys, bound as u64),
                brute_force(&sys, bound),
                "{sys:?}"
            );
        }
    }
}
