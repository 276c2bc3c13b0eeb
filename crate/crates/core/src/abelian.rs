//! Finitely generated abelian groups in invariant-factor form.
//!
//! A group `Z^r + Z/d_1 + ... + Z/d_t` has elements stored as coordinate
//! vectors of length `r + t`, free coordinates first, torsion coordinates
//! reduced into `[0, d_i)`. Subgroups are kept as the Hermite basis of their
//! preimage lattice in `Z^(r+t)`, relation vectors `d_i e_(r+i)` included, so
//! equal subgroups have identical handles.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{
    lattice_basis, rank, rational_feasible, smith_normal_form, solve_matrix, Feasibility,
    IntegerMatrix, IntegerSolution, LinearSystem,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbelianError {
    #[error("invariant factor {0} is smaller than 2")]
    SmallTorsion(BigInt),
    #[error("invariant factors {0} and {1} break the divisibility chain")]
    BrokenChain(BigInt, BigInt),
    #[error("element has {found} coordinates, group needs {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("torsion coordinate {value} is not reduced modulo {modulus}")]
    Unreduced { value: BigInt, modulus: BigInt },
    #[error("subgroups belong to different groups")]
    ParentMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FgAbGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<BigInt>,
}

impl GroupElement {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl FgAbGroup {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self, AbelianError> {
        let two = BigInt::from(2);
        if let Some(d) = torsion.iter().find(|d| **d < two) {
            return Err(AbelianError::SmallTorsion(d.clone()));
        }
        if let Some(w) = torsion.windows(2).find(|w| !(&w[1] % &w[0]).is_zero()) {
            return Err(AbelianError::BrokenChain(w[0].clone(), w[1].clone()));
        }
        Ok(Self { free_rank, torsion })
    }

    pub fn trivial() -> Self {
        Self {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Length of element coordinate vectors.
    pub fn num_coords(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.num_coords() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Validated element; torsion coordinates must already be reduced.
    pub fn element(&self, coords: Vec<BigInt>) -> Result<GroupElement, AbelianError> {
        if coords.len() != self.num_coords() {
            return Err(AbelianError::WrongLength {
                expected: self.num_coords(),
                found: coords.len(),
            });
        }
        for (c, d) in coords[self.free_rank..].iter().zip(&self.torsion) {
            if c.is_negative() || c >= d {
                return Err(AbelianError::Unreduced {
                    value: c.clone(),
                    modulus: d.clone(),
                });
            }
        }
        Ok(GroupElement { coords })
    }

    pub fn element_i64(&self, coords: &[i64]) -> Result<GroupElement, AbelianError> {
        self.element(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Element with torsion coordinates reduced from an arbitrary lift.
    pub fn reduce(&self, mut coords: Vec<BigInt>) -> GroupElement {
        assert_eq!(coords.len(), self.num_coords(), "lift has the wrong length");
        for (c, d) in coords[self.free_rank..].iter_mut().zip(&self.torsion) {
            *c = c.mod_floor(d);
        }
        GroupElement { coords }
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![BigInt::zero(); self.num_coords()],
        }
    }

    pub fn contains(&self, e: &GroupElement) -> bool {
        self.element(e.coords.clone()).is_ok()
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.reduce(a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect())
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        self.reduce(a.coords.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, a: &GroupElement, k: &BigInt) -> GroupElement {
        self.reduce(a.coords.iter().map(|x| x * k).collect())
    }

    /// Order of an element; `None` when it has infinite order.
    pub fn element_order(&self, e: &GroupElement) -> Option<BigInt> {
        if e.coords[..self.free_rank].iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(
            e.coords[self.free_rank..]
                .iter()
                .zip(&self.torsion)
                .fold(BigInt::one(), |acc, (x, d)| acc.lcm(&(d / x.gcd(d)))),
        )
    }

    fn relation_vectors(&self) -> Vec<Vec<BigInt>> {
        let n = self.num_coords();
        self.torsion
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let mut v = vec![BigInt::zero(); n];
                v[self.free_rank + i] = d.clone();
                v
            })
            .collect()
    }

    /// `Z^m / (column span of a)` together with the images of the `m`
    /// standard basis vectors.
    pub fn from_cokernel(a: &IntegerMatrix) -> (FgAbGroup, Vec<GroupElement>) {
        let m = a.rows();
        let snf = smith_normal_form(a);
        let factors = snf.invariant_factors();
        let rank = factors.len();
        let torsion_idx: Vec<usize> = (0..rank).filter(|&i| !factors[i].is_one()).collect();
        let group = FgAbGroup {
            free_rank: m - rank,
            torsion: torsion_idx.iter().map(|&i| factors[i].clone()).collect(),
        };
        let images = (0..m)
            .map(|j| {
                let col = snf.u.column(j);
                let mut coords: Vec<BigInt> = col[rank..].to_vec();
                coords.extend(torsion_idx.iter().map(|&i| col[i].clone()));
                group.reduce(coords)
            })
            .collect();
        (group, images)
    }

    /// Canonical handle of the subgroup generated by `gens`.
    pub fn subgroup(&self, gens: &[GroupElement]) -> Result<SubgroupHandle, AbelianError> {
        for g in gens {
            self.element(g.coords.clone())?;
        }
        let mut rows: Vec<Vec<BigInt>> = gens.iter().map(|g| g.coords.clone()).collect();
        rows.extend(self.relation_vectors());
        Ok(SubgroupHandle {
            parent: self.clone(),
            basis: lattice_basis(self.num_coords(), &rows),
        })
    }

    pub fn whole(&self) -> SubgroupHandle {
        let n = self.num_coords();
        let rows: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let mut v = vec![BigInt::zero(); n];
                v[i] = BigInt::one();
                v
            })
            .collect();
        SubgroupHandle {
            parent: self.clone(),
            basis: rows,
        }
    }

    /// `self / s` in invariant-factor form.
    pub fn quotient(&self, s: &SubgroupHandle) -> Result<FgAbGroup, AbelianError> {
        if &s.parent != self {
            return Err(AbelianError::ParentMismatch);
        }
        let n = self.num_coords();
        let cols = IntegerMatrix::from_rows(n, s.basis.clone()).transpose();
        Ok(FgAbGroup::from_cokernel(&cols).0)
    }

    /// Rank of the free parts of `gens` as rational vectors.
    pub fn rational_rank(&self, gens: &[GroupElement]) -> usize {
        if gens.is_empty() || self.free_rank == 0 {
            return 0;
        }
        let rows = gens
            .iter()
            .map(|g| g.coords[..self.free_rank].to_vec())
            .collect();
        rank(&IntegerMatrix::from_rows(self.free_rank, rows))
    }

    /// Searches nonnegative integer coefficients `c` with `Σ c_i gens[i] == target`.
    ///
    /// Generators whose free part lies in the lineality space of the cone
    /// spanned by all free parts generate a group, so their contribution is
    /// decided exactly by lattice membership (a strictly positive relation
    /// among them makes any integer combination nonnegative). The remaining
    /// generators pair positively with a linear functional that bounds their
    /// coefficients; those coefficients are searched up to `coeff_bound`, and
    /// the answer is `Inconclusive` only if that cap cuts the bound short.
    /// Certificates found this way may have coefficients above `coeff_bound`.
    pub fn semigroup_member(
        &self,
        gens: &[GroupElement],
        target: &GroupElement,
        coeff_bound: u64,
    ) -> Membership {
        if target.is_zero() {
            return Membership::Yes(vec![BigInt::zero(); gens.len()]);
        }
        if self.is_finite() {
            return self.semigroup_member_finite(gens, target);
        }
        let k = gens.len();
        let r = self.free_rank;
        let free = |g: &GroupElement| g.coords[..r].to_vec();

        // λ >= 0 with Σ λ_i free(g_i) == v
        let in_cone = |v: &[BigInt]| {
            let mut sys = LinearSystem::new(k);
            for f in 0..r {
                let coeffs = gens.iter().map(|g| g.coords[f].clone()).collect();
                sys.add_equality(coeffs, v[f].clone()).expect("k coefficients");
            }
            for i in 0..k {
                sys.add_inequality(unit(k, i), Zero::zero(), false)
                    .expect("k coefficients");
            }
            rational_feasible(&sys).is_feasible()
        };
        if !in_cone(&target.coords[..r]) {
            return Membership::No;
        }
        let (lineal, pointed): (Vec<usize>, Vec<usize>) = (0..k).partition(|&i| {
            let neg: Vec<BigInt> = gens[i].coords[..r].iter().map(|x| -x).collect();
            in_cone(&neg)
        });

        // u vanishes on the lineality space and is >= 1 on the pointed generators
        let u: Vec<BigRational> = if pointed.is_empty() {
            vec![BigRational::zero(); r]
        } else {
            let mut sys = LinearSystem::new(r);
            for &i in &lineal {
                sys.add_equality(free(&gens[i]), BigInt::zero())
                    .expect("r coefficients");
            }
            for &i in &pointed {
                sys.add_inequality(free(&gens[i]), BigRational::one(), false)
                    .expect("r coefficients");
            }
            match rational_feasible(&sys) {
                Feasibility::Feasible(u) => u,
                Feasibility::Infeasible => unreachable!("pointed generators lie outside the lineality space"),
            }
        };
        let pair = |v: &[BigInt]| -> BigRational {
            v.iter()
                .zip(&u)
                .map(|(x, y)| BigRational::from_integer(x.clone()) * y)
                .sum()
        };
        let budget = pair(&target.coords[..r]);
        let weights: Vec<BigRational> = pointed.iter().map(|&i| pair(&gens[i].coords[..r])).collect();
        let cap = BigInt::from(coeff_bound);
        let mut complete = true;
        let caps: Vec<BigInt> = weights
            .iter()
            .map(|w| {
                let b = (&budget / w).floor().to_integer();
                if b > cap {
                    complete = false;
                    cap.clone()
                } else {
                    b
                }
            })
            .collect();

        let lineal_gens: Vec<GroupElement> = lineal.iter().map(|&i| gens[i].clone()).collect();
        let positive = self.positive_relation(&lineal_gens);
        let mut chosen = vec![BigInt::zero(); pointed.len()];
        let mut found = None;
        self.pointed_search(
            &PointedSearch {
                gens,
                pointed: &pointed,
                weights: &weights,
                caps: &caps,
                lineal_gens: &lineal_gens,
            },
            0,
            budget,
            &mut chosen,
            target,
            &mut found,
        );
        match found {
            Some(a) => {
                let mut coeffs = vec![BigInt::zero(); k];
                for (&i, c) in pointed.iter().zip(&chosen) {
                    coeffs[i] = c.clone();
                }
                let shifted = make_nonnegative(a, &positive);
                for (&i, c) in lineal.iter().zip(shifted) {
                    coeffs[i] = c;
                }
                Membership::Yes(coeffs)
            }
            None if complete => Membership::No,
            None => Membership::Inconclusive,
        }
    }

    /// Depth-first search over pointed coefficients whose functional values
    /// add up exactly to the budget; leaves are settled by lattice membership.
    fn pointed_search(
        &self,
        s: &PointedSearch<'_>,
        depth: usize,
        remaining: BigRational,
        chosen: &mut Vec<BigInt>,
        target: &GroupElement,
        found: &mut Option<Vec<BigInt>>,
    ) {
        if found.is_some() {
            return;
        }
        if depth == s.pointed.len() {
            if !remaining.is_zero() {
                return;
            }
            let mut residual = target.clone();
            for (&i, c) in s.pointed.iter().zip(chosen.iter()) {
                residual = self.add(&residual, &self.scale(&s.gens[i], &-c));
            }
            *found = self.integer_combination(s.lineal_gens, &residual);
            return;
        }
        let mut c = BigInt::zero();
        let mut left = remaining;
        while c <= s.caps[depth] && !left.is_negative() {
            chosen[depth] = c.clone();
            self.pointed_search(s, depth + 1, left.clone(), chosen, target, found);
            if found.is_some() {
                return;
            }
            c += 1;
            left -= &s.weights[depth];
        }
        chosen[depth] = BigInt::zero();
    }

    /// Integer (possibly negative) `a` with `Σ a_i gens[i] == target`.
    fn integer_combination(&self, gens: &[GroupElement], target: &GroupElement) -> Option<Vec<BigInt>> {
        if gens.is_empty() {
            return target.is_zero().then(Vec::new);
        }
        let mut cols: Vec<Vec<BigInt>> = gens.iter().map(|g| g.coords.clone()).collect();
        cols.extend(self.relation_vectors());
        let a = IntegerMatrix::from_rows(self.num_coords(), cols).transpose();
        match solve_matrix(&a, &target.coords) {
            IntegerSolution::Solvable { mut particular, .. } => {
                particular.truncate(gens.len());
                Some(particular)
            }
            IntegerSolution::Unsolvable => None,
        }
    }

    /// A relation `Σ R_i gens[i] == 0` with every `R_i >= 1`, for generators
    /// whose free parts positively span a subspace.
    fn positive_relation(&self, gens: &[GroupElement]) -> Vec<BigInt> {
        let k = gens.len();
        if k == 0 {
            return Vec::new();
        }
        let r = self.free_rank;
        let mut sys = LinearSystem::new(k);
        for f in 0..r {
            let coeffs = gens.iter().map(|g| g.coords[f].clone()).collect();
            sys.add_equality(coeffs, BigInt::zero()).expect("k coefficients");
        }
        for i in 0..k {
            sys.add_inequality(unit(k, i), BigRational::one(), false)
                .expect("k coefficients");
        }
        let Feasibility::Feasible(lambda) = rational_feasible(&sys) else {
            unreachable!("generators of a subspace admit a positive relation");
        };
        let den = lambda.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let rho: Vec<BigInt> = lambda
            .iter()
            .map(|x| (x * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        let tail = gens
            .iter()
            .zip(&rho)
            .fold(self.zero(), |acc, (g, c)| self.add(&acc, &self.scale(g, c)));
        let ord = self.element_order(&tail).expect("free part vanishes");
        rho.into_iter().map(|x| x * &ord).collect()
    }

    fn semigroup_member_finite(&self, gens: &[GroupElement], target: &GroupElement) -> Membership {
        let k = gens.len();
        let mut seen: HashMap<GroupElement, Vec<BigInt>> = HashMap::new();
        let mut queue = VecDeque::new();
        seen.insert(self.zero(), vec![BigInt::zero(); k]);
        queue.push_back(self.zero());
        while let Some(e) = queue.pop_front() {
            let coeffs = seen[&e].clone();
            for (i, g) in gens.iter().enumerate() {
                let next = self.add(&e, g);
                if seen.contains_key(&next) {
                    continue;
                }
                let mut c = coeffs.clone();
                c[i] += 1;
                if &next == target {
                    return Membership::Yes(c);
                }
                seen.insert(next.clone(), c);
                queue.push_back(next);
            }
        }
        Membership::No
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

struct PointedSearch<'a> {
    gens: &'a [GroupElement],
    pointed: &'a [usize],
    weights: &'a [BigRational],
    caps: &'a [BigInt],
    lineal_gens: &'a [GroupElement],
}

fn unit(k: usize, i: usize) -> Vec<BigInt> {
    let mut e = vec![BigInt::zero(); k];
    e[i] = BigInt::one();
    e
}

/// `a + N * positive` for the least `N >= 0` making every entry nonnegative.
fn make_nonnegative(a: Vec<BigInt>, positive: &[BigInt]) -> Vec<BigInt> {
    let n = a
        .iter()
        .zip(positive)
        .filter(|(x, _)| x.is_negative())
        .map(|(x, p)| (-x).div_ceil(p))
        .max()
        .unwrap_or_else(BigInt::zero);
    a.into_iter().zip(positive).map(|(x, p)| x + &n * p).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Yes(Vec<BigInt>),
    No,
    Inconclusive,
}

/// Canonical form of a subgroup: Hermite basis of its preimage lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubgroupHandle {
    parent: FgAbGroup,
    basis: Vec<Vec<BigInt>>,
}

impl SubgroupHandle {
    pub fn parent(&self) -> &FgAbGroup {
        &self.parent
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn is_whole(&self) -> bool {
        *self == self.parent.whole()
    }

    pub fn is_zero(&self) -> bool {
        self.basis == lattice_basis(self.parent.num_coords(), &self.parent.relation_vectors())
    }

    /// Basis rows read as group elements, zero rows dropped.
    pub fn generators(&self) -> Vec<GroupElement> {
        self.basis
            .iter()
            .map(|b| self.parent.reduce(b.clone()))
            .filter(|g| !g.is_zero())
            .collect()
    }

    pub fn equals(&self, other: &SubgroupHandle) -> Result<bool, AbelianError> {
        if self.parent != other.parent {
            return Err(AbelianError::ParentMismatch);
        }
        Ok(self.basis == other.basis)
    }

    /// Whether `self` is contained in `other`.
    pub fn is_subgroup_of(&self, other: &SubgroupHandle) -> Result<bool, AbelianError> {
        if self.parent != other.parent {
            return Err(AbelianError::ParentMismatch);
        }
        let n = self.parent.num_coords();
        if other.basis.is_empty() {
            return Ok(self.basis.is_empty());
        }
        let bt = IntegerMatrix::from_rows(n, other.basis.clone()).transpose();
        Ok(self
            .basis
            .iter()
            .all(|v| solve_matrix(&bt, v).is_solvable()))
    }

    /// Abstract isomorphism type of the subgroup itself.
    pub fn isomorphism_type(&self) -> FgAbGroup {
        let n = self.parent.num_coords();
        let k = self.basis.len();
        if k == 0 {
            return FgAbGroup::trivial();
        }
        let bt = IntegerMatrix::from_rows(n, self.basis.clone()).transpose();
        let rels = self.parent.relation_vectors();
        let mut c = IntegerMatrix::zeros(k, rels.len());
        for (j, rel) in rels.iter().enumerate() {
            match solve_matrix(&bt, rel) {
                IntegerSolution::Solvable { particular, .. } => {
                    for (i, x) in particular.into_iter().enumerate() {
                        c[(i, j)] = x;
                    }
                }
                IntegerSolution::Unsolvable => unreachable!("relation lattice lies in the subgroup"),
            }
        }
        FgAbGroup::from_cokernel(&c).0
    }

    /// Index in the parent when finite.
    pub fn index(&self) -> Option<BigInt> {
        self.parent.quotient(self).ok()?.order()
    }

    pub fn order(&self) -> Option<BigInt> {
        self.isomorphism_type().order()
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order()?.to_u64()
    }
}

impl fmt::Display for SubgroupHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = self.generators();
        write!(f, "{} = <", self.isomorphism_type())?;
        for (i, g) in gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vec;
    use proptest::prelude::*;

    fn cyclic(n: i64) -> FgAbGroup {
        FgAbGroup::new(0, vec![BigInt::from(n)]).unwrap()
    }

    fn el(g: &FgAbGroup, c: &[i64]) -> GroupElement {
        g.element_i64(c).unwrap()
    }

    #[test]
    fn construction_rejects_bad_presentations() {
        assert!(matches!(
            FgAbGroup::new(0, int_vec(&[1])),
            Err(AbelianError::SmallTorsion(_))
        ));
        assert!(matches!(
            FgAbGroup::new(1, int_vec(&[2, 3])),
            Err(AbelianError::BrokenChain(..))
        ));
        let g = cyclic(4);
        assert!(matches!(g.element_i64(&[5]), Err(AbelianError::Unreduced { .. })));
        assert!(matches!(g.element_i64(&[1, 0]), Err(AbelianError::WrongLength { .. })));
    }

    #[test]
    fn cokernel_of_identity_is_trivial() {
        let (g, images) = FgAbGroup::from_cokernel(&IntegerMatrix::identity(3));
        assert!(g.is_trivial());
        assert!(images.iter().all(GroupElement::is_zero));
    }

    #[test]
    fn cokernel_of_quadric_cone_pairing() {
        // rays (1,0), (1,2) as rows: m -> (<v1,m>, <v2,m>)
        let a = IntegerMatrix::from_i64_rows(2, &[&[1, 0], &[1, 2]]);
        let (g, images) = FgAbGroup::from_cokernel(&a);
        assert_eq!(g, cyclic(2));
        assert_eq!(images, vec![el(&g, &[1]), el(&g, &[1])]);
    }

    #[test]
    fn cokernel_of_threefold_pairing() {
        let a = IntegerMatrix::from_i64_rows(3, &[&[1, 0, 0], &[1, 2, 0], &[0, 1, 2]]);
        let (g, images) = FgAbGroup::from_cokernel(&a);
        assert_eq!(g, cyclic(4));
        let gen = &images[1];
        assert_eq!(g.element_order(gen), Some(BigInt::from(4)));
        assert_eq!(images[0], g.scale(gen, &BigInt::from(3)));
        assert_eq!(images[2], g.scale(gen, &BigInt::from(2)));
    }

    #[test]
    fn subgroup_canonical_forms() {
        let g = cyclic(4);
        assert!(g.subgroup(&[]).unwrap().is_zero());
        let a = g.subgroup(&[el(&g, &[2]), el(&g, &[0])]).unwrap();
        let b = g.subgroup(&[el(&g, &[2])]).unwrap();
        assert_eq!(a, b);
        assert!(g.subgroup(&[el(&g, &[3])]).unwrap().is_whole());
        assert_eq!(b.isomorphism_type(), cyclic(2));
    }

    #[test]
    fn subgroup_comparisons() {
        let g = cyclic(4);
        let two = g.subgroup(&[el(&g, &[2])]).unwrap();
        let one = g.subgroup(&[el(&g, &[1])]).unwrap();
        assert!(two.equals(&two).unwrap());
        assert!(two.is_subgroup_of(&one).unwrap());
        assert!(!one.is_subgroup_of(&two).unwrap());

        let z2 = FgAbGroup::free(2);
        let x = z2.subgroup(&[el(&z2, &[1, 0])]).unwrap();
        let y = z2.subgroup(&[el(&z2, &[0, 1])]).unwrap();
        assert!(!x.equals(&y).unwrap());
        assert!(!x.is_subgroup_of(&y).unwrap() && !y.is_subgroup_of(&x).unwrap());
        assert_eq!(x.equals(&two), Err(AbelianError::ParentMismatch));
    }

    #[test]
    fn quotients() {
        let g = cyclic(4);
        assert!(g.quotient(&g.whole()).unwrap().is_trivial());
        let two = g.subgroup(&[el(&g, &[2])]).unwrap();
        assert_eq!(g.quotient(&two).unwrap(), cyclic(2));
        let z2 = FgAbGroup::free(2);
        let x = z2.subgroup(&[el(&z2, &[1, 0])]).unwrap();
        assert_eq!(z2.quotient(&x).unwrap(), FgAbGroup::free(1));
    }

    #[test]
    fn semigroup_membership_examples() {
        let g = cyclic(4);
        assert!(matches!(
            g.semigroup_member(&[el(&g, &[1])], &g.zero(), 16),
            Membership::Yes(_)
        ));
        assert_eq!(
            g.semigroup_member(&[el(&g, &[1])], &el(&g, &[3]), 16),
            Membership::Yes(int_vec(&[3]))
        );
        let z = FgAbGroup::free(1);
        assert_eq!(
            z.semigroup_member(&[el(&z, &[2]), el(&z, &[3])], &el(&z, &[1]), 16),
            Membership::No
        );
        // 5 and -3 generate Z as a group, and their cone is a line
        for bound in [0, 1, 16] {
            let gens = [el(&z, &[5]), el(&z, &[-3])];
            let Membership::Yes(c) = z.semigroup_member(&gens, &el(&z, &[1]), bound) else {
                panic!("1 = 2*5 + 3*(-3)");
            };
            assert!(c.iter().all(|x| !x.is_negative()));
            assert_eq!(&c[0] * 5 - &c[1] * 3, BigInt::from(1));
        }
        // the coefficient of 7 is bounded by 2 but capped at 1
        let gens = [el(&z, &[7]), el(&z, &[1])];
        assert_eq!(z.semigroup_member(&[el(&z, &[7])], &el(&z, &[15]), 16), Membership::No);
        assert_eq!(
            z.semigroup_member(&[gens[0].clone()], &el(&z, &[14]), 1),
            Membership::Inconclusive
        );
        assert_eq!(
            z.semigroup_member(&[gens[0].clone()], &el(&z, &[14]), 2),
            Membership::Yes(int_vec(&[2]))
        );
        assert_eq!(g.semigroup_member(&[el(&g, &[2])], &el(&g, &[1]), 16), Membership::No);
    }

    #[test]
    fn semigroup_membership_mixed_group() {
        let g = FgAbGroup::new(1, int_vec(&[2])).unwrap();
        let gens = [el(&g, &[1, 1]), el(&g, &[-1, 0])];
        let target = el(&g, &[0, 1]);
        let Membership::Yes(c) = g.semigroup_member(&gens, &target, 16) else {
            panic!("(1,1) + (-1,0) = (0,1)");
        };
        let sum = c
            .iter()
            .zip(&gens)
            .fold(g.zero(), |acc, (k, x)| g.add(&acc, &g.scale(x, k)));
        assert_eq!(sum, target);
        // (0,1) is not reachable from (1,0),(−1,0)
        let gens = [el(&g, &[1, 0]), el(&g, &[-1, 0])];
        assert_eq!(g.semigroup_member(&gens, &target, 16), Membership::No);
    }

    #[test]
    fn rational_ranks() {
        let g = cyclic(4);
        assert_eq!(g.rational_rank(&[el(&g, &[1])]), 0);
        let z2 = FgAbGroup::free(2);
        assert_eq!(z2.rational_rank(&[el(&z2, &[1, 0]), el(&z2, &[-1, 0])]), 1);
        assert_eq!(
            z2.rational_rank(&[el(&z2, &[1, 0]), el(&z2, &[0, 1]), el(&z2, &[-1, -1])]),
            2
        );
    }

    fn arb_group() -> impl Strategy<Value = FgAbGroup> {
        (0usize..=2, prop::collection::vec(1i64..=3, 0..=2)).prop_map(|(r, steps)| {
            // build a divisibility chain from multipliers
            let mut torsion = Vec::new();
            let mut d = BigInt::from(2);
            for s in steps {
                d *= s;
                torsion.push(d.clone());
            }
            FgAbGroup::new(r, torsion).unwrap()
        })
    }

    fn arb_group_with_gens() -> impl Strategy<Value = (FgAbGroup, Vec<GroupElement>, Vec<GroupElement>)> {
        arb_group().prop_flat_map(|g| {
            let n = g.num_coords();
            let coords = prop::collection::vec(prop::collection::vec(-6i64..=6, n), 0..=3);
            (Just(g), coords.clone(), coords).prop_map(|(g, a, b)| {
                let lift = |v: Vec<Vec<i64>>| {
                    v.into_iter()
                        .map(|c| g.reduce(int_vec(&c)))
                        .collect::<Vec<_>>()
                };
                let (a, b) = (lift(a), lift(b));
                (g, a, b)
            })
        })
    }

    fn enumerate_finite(g: &FgAbGroup) -> Vec<GroupElement> {
        let mut out = vec![g.zero()];
        for (i, d) in g.torsion().iter().enumerate() {
            let d = d.to_i64().unwrap();
            let mut next = Vec::new();
            for e in &out {
                for k in 0..d {
                    let mut c = e.coords().to_vec();
                    c[i] = BigInt::from(k);
                    next.push(g.reduce(c));
                }
            }
            out = next;
        }
        out
    }

    fn small_box(k: usize, bound: i64) -> Vec<Vec<BigInt>> {
        let mut out = vec![Vec::new()];
        for _ in 0..k {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..=bound).map(move |x| {
                        let mut w = v.clone();
                        w.push(BigInt::from(x));
                        w
                    })
                })
                .collect();
        }
        out
    }

    proptest! {
        #[test]
        fn canonicalization_is_idempotent((g, a, _b) in arb_group_with_gens()) {
            let h = g.subgroup(&a).unwrap();
            let again = g.subgroup(&h.generators()).unwrap();
            prop_assert_eq!(again, h);
        }

        #[test]
        fn equality_is_mutual_containment((g, a, b) in arb_group_with_gens()) {
            let ha = g.subgroup(&a).unwrap();
            let hb = g.subgroup(&b).unwrap();
            let mutual = ha.is_subgroup_of(&hb).unwrap() && hb.is_subgroup_of(&ha).unwrap();
            prop_assert_eq!(ha.equals(&hb).unwrap(), mutual);
        }

        #[test]
        fn quotient_order_matches_count((g, a, _b) in arb_group_with_gens()) {
            prop_assume!(g.is_finite());
            let h = g.subgroup(&a).unwrap();
            let all = enumerate_finite(&g);
            // subgroup size by closure over the enumerated group
            let mut members = std::collections::HashSet::new();
            members.insert(g.zero());
            loop {
                let before = members.len();
                let current: Vec<_> = members.iter().cloned().collect();
                for x in &current {
                    for y in &a {
                        members.insert(g.add(x, y));
                    }
                }
                if members.len() == before { break; }
            }
            prop_assert_eq!(BigInt::from(all.len()), g.order().unwrap());
            let q = g.quotient(&h).unwrap();
            prop_assert_eq!(q.order().unwrap() * BigInt::from(members.len()), g.order().unwrap());
            prop_assert_eq!(h.order_u64().unwrap() as usize, members.len());
        }

        #[test]
        fn semigroup_answers_agree_with_small_box(
            (g, a, b) in arb_group_with_gens(),
        ) {
            prop_assume!(!a.is_empty());
            let combine = |c: &[BigInt]| {
                a.iter().zip(c).fold(g.zero(), |acc, (x, k)| g.add(&acc, &g.scale(x, k)))
            };
            for target in b.iter().chain(a.iter().map(|x| g.neg(x)).collect::<Vec<_>>().iter()) {
                let brute = small_box(a.len(), 4).into_iter().find(|c| &combine(c) == target);
                match g.semigroup_member(&a, target, 16) {
                    Membership::Yes(c) => {
                        prop_assert!(c.iter().all(|x| !x.is_negative()));
                        prop_assert_eq!(&combine(&c), target);
                    }
                    Membership::No => prop_assert!(brute.is_none()),
                    Membership::Inconclusive => prop_assert!(brute.is_none()),
                }
            }
        }

        #[test]
        fn subspace_cones_give_groups((g, a, _b) in arb_group_with_gens()) {
            // close the generator list under negation of free parts
            let mut gens = a.clone();
            gens.extend(a.iter().map(|x| {
                let mut c = x.coords().to_vec();
                for v in &mut c[..g.free_rank()] {
                    *v = -v.clone();
                }
                g.reduce(c)
            }));
            for x in &gens {
                let target = g.neg(x);
                let m = g.semigroup_member(&gens, &target, 16);
                prop_assert!(matches!(m, Membership::Yes(_)), "{:?}", m);
            }
        }
    }
}
