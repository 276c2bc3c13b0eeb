//! Luna analysis of diagonal quasitorus actions on affine space.
//!
//! A weight system `χ_1, ..., χ_m ∈ K` describes the action of the
//! quasitorus `H = Spec K[K]` on `K^m`. A point with support `S` has a closed
//! orbit exactly when the rational cone of `{χ_i : i ∈ S}` is a subspace, and
//! the character group of its stabilizer is `K / <χ_S>`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::abelian::{AbelianError, FgAbGroup, GroupElement, SubgroupHandle};
use crate::cone::{Cone, ConeError, Face};
use crate::divisors::ToricData;
use crate::linalg::{
    integer_kernel, lattice_basis, rational_feasible, IntegerMatrix, LinearSystem,
};

/// Largest weight count accepted by [`luna_strata`], which visits all `2^m` supports.
pub const MAX_LUNA_WEIGHTS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LunaError {
    #[error("a weight system needs at least one weight")]
    NoWeights,
    #[error("weight {}: {source}", .index + 1)]
    BadWeight { index: usize, source: AbelianError },
    #[error("{m} weights exceed the limit of {max} for support enumeration")]
    TooManyWeights { m: usize, max: usize },
    #[error("the action is not strongly stable (offending supports: {})", list(.offending))]
    NotStronglyStable { offending: Vec<Support> },
    #[error("the kernel of the weight map does not give a valid cone: {0}")]
    GaleDual(ConeError),
    #[error("face {face} does not match a closed support: {reason}")]
    Bridge { face: Face, reason: String },
}

fn list(s: &[Support]) -> String {
    s.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    group: FgAbGroup,
    weights: Vec<GroupElement>,
}

impl WeightSystem {
    pub fn new(group: FgAbGroup, weights: Vec<GroupElement>) -> Result<Self, LunaError> {
        if weights.is_empty() {
            return Err(LunaError::NoWeights);
        }
        for (index, w) in weights.iter().enumerate() {
            group
                .element(w.coords().to_vec())
                .map_err(|source| LunaError::BadWeight { index, source })?;
        }
        Ok(WeightSystem { group, weights })
    }

    /// Reduces raw coordinate vectors into `group`.
    pub fn from_coords(group: FgAbGroup, coords: Vec<Vec<BigInt>>) -> Result<Self, LunaError> {
        let n = group.num_coords();
        let mut weights = Vec::with_capacity(coords.len());
        for (index, c) in coords.into_iter().enumerate() {
            if c.len() != n {
                return Err(LunaError::BadWeight {
                    index,
                    source: AbelianError::WrongLength {
                        expected: n,
                        found: c.len(),
                    },
                });
            }
            weights.push(group.reduce(c));
        }
        WeightSystem::new(group, weights)
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn weights(&self) -> &[GroupElement] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Every weight replaced by its inverse.
    pub fn negated(&self) -> WeightSystem {
        WeightSystem {
            group: self.group.clone(),
            weights: self.weights.iter().map(|w| self.group.neg(w)).collect(),
        }
    }

    fn select(&self, s: &Support) -> Vec<GroupElement> {
        s.indices.iter().map(|&i| self.weights[i].clone()).collect()
    }
}

/// A set of coordinate indices (0-based; displayed 1-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Support {
    indices: Vec<usize>,
}

impl Support {
    pub fn new(mut indices: Vec<usize>) -> Support {
        indices.sort_unstable();
        indices.dedup();
        Support { indices }
    }

    pub fn full(m: usize) -> Support {
        Support {
            indices: (0..m).collect(),
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LunaStratum {
    pub subgroup: SubgroupHandle,
    pub supports: Vec<Support>,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stability {
    Stable,
    Unstable { offending: Vec<Support> },
}

/// Cox weights of a toric variety: `K = Cl(X)` and `χ_i = [D_i]`.
pub fn cox_weight_system(t: &ToricData) -> WeightSystem {
    WeightSystem {
        group: t.class_group().clone(),
        weights: t.divisor_classes().to_vec(),
    }
}

/// Whether the rational cone spanned by the free parts of the support's
/// weights is a linear subspace. Checked as the existence of a relation
/// `Σ λ_i χ_i = 0` with every `λ_i ≥ 1`, which is equivalent to each `-χ_i`
/// lying in the cone.
pub fn is_closed_support(w: &WeightSystem, s: &Support) -> bool {
    let k = s.len();
    if k == 0 {
        return true;
    }
    let r = w.group.free_rank();
    let mut sys = LinearSystem::new(k);
    for f in 0..r {
        let coeffs = s.indices.iter().map(|&i| w.weights[i].coords()[f].clone()).collect();
        sys.add_equality(coeffs, BigInt::zero()).expect("k coefficients");
    }
    for j in 0..k {
        let mut e = vec![BigInt::zero(); k];
        e[j] = BigInt::one();
        sys.add_inequality(e, One::one(), false).expect("k coefficients");
    }
    rational_feasible(&sys).is_feasible()
}

/// `<χ_S>`; the stabilizer of a point with support `S` has character group `K / <χ_S>`.
pub fn stabilizer_subgroup(w: &WeightSystem, s: &Support) -> SubgroupHandle {
    w.group
        .subgroup(&w.select(s))
        .expect("weights belong to the group")
}

fn supports_by_size(m: usize) -> Vec<Support> {
    let mut all: Vec<Support> = (0u32..(1u32 << m))
        .map(|mask| Support::new((0..m).filter(|&i| mask & (1 << i) != 0).collect()))
        .collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all
}

/// Closed supports grouped by stabilizer, sorted by decreasing dimension.
pub fn luna_strata(w: &WeightSystem) -> Result<Vec<LunaStratum>, LunaError> {
    let m = w.len();
    if m > MAX_LUNA_WEIGHTS {
        return Err(LunaError::TooManyWeights {
            m,
            max: MAX_LUNA_WEIGHTS,
        });
    }
    let mut strata: Vec<LunaStratum> = Vec::new();
    let mut index: HashMap<SubgroupHandle, usize> = HashMap::new();
    for s in supports_by_size(m) {
        if !is_closed_support(w, &s) {
            continue;
        }
        let sub = stabilizer_subgroup(w, &s);
        let dim = s.len() - w.group.rational_rank(&w.select(&s));
        let i = *index.entry(sub.clone()).or_insert_with(|| {
            strata.push(LunaStratum {
                subgroup: sub,
                supports: Vec::new(),
                dim: 0,
            });
            strata.len() - 1
        });
        strata[i].dim = strata[i].dim.max(dim);
        strata[i].supports.push(s);
    }
    strata.sort_by(|a, b| b.dim.cmp(&a.dim));
    Ok(strata)
}

/// Stable iff the full support and every support of size `m - 1` are closed
/// with `<χ_S> = K`.
pub fn check_strongly_stable(w: &WeightSystem) -> Stability {
    let m = w.len();
    let mut candidates = vec![Support::full(m)];
    candidates.extend((0..m).map(|skip| Support::new((0..m).filter(|&i| i != skip).collect())));
    let mut offending: Vec<Support> = candidates
        .into_iter()
        .filter(|s| !(is_closed_support(w, s) && stabilizer_subgroup(w, s).is_whole()))
        .collect();
    offending.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    if offending.is_empty() {
        Stability::Stable
    } else {
        Stability::Unstable { offending }
    }
}

/// The quotient cone of a strongly stable weight system.
///
/// `M` is the kernel of `Z^m -> K`, `e_i -> χ_i`, in Hermite basis `b_1..b_d`;
/// ray `i` is the primitive vector along `(b_1[i], ..., b_d[i])`.
pub fn gale_dual(w: &WeightSystem) -> Result<GaleDual, LunaError> {
    if let Stability::Unstable { offending } = check_strongly_stable(w) {
        return Err(LunaError::NotStronglyStable { offending });
    }
    let m = w.len();
    let n = w.group.num_coords();
    let r = w.group.free_rank();
    let mut cols: Vec<Vec<BigInt>> = w.weights.iter().map(|g| g.coords().to_vec()).collect();
    for (j, d) in w.group.torsion().iter().enumerate() {
        let mut v = vec![BigInt::zero(); n];
        v[r + j] = d.clone();
        cols.push(v);
    }
    let a = IntegerMatrix::from_rows(n, cols).transpose();
    let projected: Vec<Vec<BigInt>> = integer_kernel(&a)
        .into_iter()
        .map(|mut v| {
            v.truncate(m);
            v
        })
        .collect();
    let basis = lattice_basis(m, &projected);
    let d = basis.len();
    let rays: Vec<Vec<BigInt>> = (0..m).map(|i| basis.iter().map(|b| b[i].clone()).collect()).collect();
    let cone = Cone::new(d, rays, true).map_err(LunaError::GaleDual)?;
    Ok(GaleDual {
        lattice_basis: basis,
        cone,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaleDual {
    /// Rows span the kernel of the weight map inside `Z^m`.
    pub lattice_basis: Vec<Vec<BigInt>>,
    pub cone: Cone,
}

/// Verifies that faces correspond to closed supports of the Cox weights via
/// `f -> dset(f)`, bijectively, with matching subgroups.
pub fn face_support_bridge(t: &ToricData) -> Result<Vec<(Face, Support)>, LunaError> {
    let w = cox_weight_system(t);
    let mut seen: HashMap<Support, Face> = HashMap::new();
    let mut out = Vec::new();
    for data in t.all_face_data() {
        let s = Support::new(data.dset.clone());
        let fail = |reason: String| LunaError::Bridge {
            face: data.face.clone(),
            reason,
        };
        if !is_closed_support(&w, &s) {
            return Err(fail(format!("support {s} is not closed")));
        }
        if stabilizer_subgroup(&w, &s) != data.g_subgroup {
            return Err(fail(format!("stabilizer of {s} differs from G(O)")));
        }
        if let Some(other) = seen.insert(s.clone(), data.face.clone()) {
            return Err(fail(format!("support {s} already used by face {other}")));
        }
        out.push((data.face, s));
    }
    if w.len() <= MAX_LUNA_WEIGHTS {
        let closed = supports_by_size(w.len())
            .into_iter()
            .filter(|s| is_closed_support(&w, s))
            .count();
        if closed != out.len() {
            return Err(LunaError::Bridge {
                face: t.cone().apex().clone(),
                reason: format!("{closed} closed supports but {} faces", out.len()),
            });
        }
    }
    Ok(out)
}

/// Whether two ray–facet pairing matrices agree after permuting rows and
/// columns. Rows are matched by backtracking over equal sorted row contents.
pub fn pairing_matrices_equivalent(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let cols = |m: &[Vec<BigInt>]| m.first().map_or(0, Vec::len);
    if cols(a) != cols(b) {
        return false;
    }
    let sorted = |row: &Vec<BigInt>| {
        let mut r = row.clone();
        r.sort();
        r
    };
    let sa: Vec<Vec<BigInt>> = a.iter().map(sorted).collect();
    let sb: Vec<Vec<BigInt>> = b.iter().map(sorted).collect();
    let mut used = vec![false; b.len()];
    let mut perm = Vec::with_capacity(a.len());
    match_rows(a, b, &sa, &sb, &mut used, &mut perm)
}

fn match_rows(
    a: &[Vec<BigInt>],
    b: &[Vec<BigInt>],
    sa: &[Vec<BigInt>],
    sb: &[Vec<BigInt>],
    used: &mut [bool],
    perm: &mut Vec<usize>,
) -> bool {
    let i = perm.len();
    if i == a.len() {
        // rows matched; columns must agree as multisets of column vectors
        let column = |m: &[Vec<BigInt>], rows: &[usize], j: usize| -> Vec<BigInt> {
            rows.iter().map(|&r| m[r][j].clone()).collect()
        };
        let ident: Vec<usize> = (0..a.len()).collect();
        let n = a.first().map_or(0, Vec::len);
        let mut ca: Vec<Vec<BigInt>> = (0..n).map(|j| column(a, &ident, j)).collect();
        let mut cb: Vec<Vec<BigInt>> = (0..n).map(|j| column(b, perm, j)).collect();
        ca.sort();
        cb.sort();
        return ca == cb;
    }
    for j in 0..b.len() {
        if used[j] || sa[i] != sb[j] {
            continue;
        }
        used[j] = true;
        perm.push(j);
        if match_rows(a, b, sa, sb, used, perm) {
            return true;
        }
        perm.pop();
        used[j] = false;
    }
    false
}
