//! Pointed rational polyhedral cones given by primitive ray generators.
//!
//! Faces are identified by the sorted indices of the rays they contain; the
//! apex is the empty set and the cone itself contains every ray.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{
    dot, integer_kernel, rank, rational_feasible, smith_normal_form, solve_matrix, Feasibility,
    IntegerMatrix, IntegerSolution, LinearSystem,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConeError {
    #[error("ray {} has {found} coordinates, expected {expected}", .index + 1)]
    WrongLength {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("ray {} is the zero vector", .index + 1)]
    ZeroRay { index: usize },
    #[error("ray {} {ray} is not primitive; use {suggestion} (or pass --normalize)", .index + 1)]
    NotPrimitive {
        index: usize,
        ray: VecDisplay,
        suggestion: VecDisplay,
    },
    #[error("rays {} and {} coincide", .first + 1, .second + 1)]
    DuplicateRay { first: usize, second: usize },
    #[error("ray {} is not extremal: it equals {combination}", .index + 1)]
    NotExtremal {
        index: usize,
        combination: Combination,
    },
    #[error("cone is not pointed: {combination} = 0; lineality spaces are unsupported")]
    NotPointed { combination: Combination },
    #[error("rays span a {dim}-dimensional subspace of a rank-{rank} lattice; split off the torus factor first")]
    NotFullDimensional { dim: usize, rank: usize },
}

/// Integer vector wrapper for error messages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VecDisplay(pub Vec<BigInt>);

impl fmt::Display for VecDisplay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Nonnegative combination of rays, as `(ray index, coefficient)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Combination(pub Vec<(usize, BigRational)>);

impl fmt::Display for Combination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(i, c)| format!("{c}*ray{}", i + 1))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    rank: usize,
    rays: Vec<Vec<BigInt>>,
    facets: Vec<Vec<BigInt>>,
    faces: Vec<Face>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    dim: usize,
    rays: Vec<usize>,
}

impl Face {
    pub fn rays(&self) -> &[usize] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn contains_ray(&self, i: usize) -> bool {
        self.rays.binary_search(&i).is_ok()
    }

    pub fn is_apex(&self) -> bool {
        self.rays.is_empty()
    }

    /// Whether `self` is a face of `other`.
    pub fn is_subface_of(&self, other: &Face) -> bool {
        self.rays.iter().all(|r| other.contains_ray(r.to_owned()))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rays.iter().map(|r| (r + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Shared per-ray checks: lengths, nonzero, primitivity, distinctness.
fn prepare_rays(
    rank: usize,
    raw: Vec<Vec<BigInt>>,
    normalize: bool,
) -> Result<Vec<Vec<BigInt>>, ConeError> {
    let mut rays = Vec::with_capacity(raw.len());
    for (index, ray) in raw.into_iter().enumerate() {
        if ray.len() != rank {
            return Err(ConeError::WrongLength {
                index,
                expected: rank,
                found: ray.len(),
            });
        }
        let g = ray.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            return Err(ConeError::ZeroRay { index });
        }
        let ray = if g.is_one() {
            ray
        } else {
            let primitive: Vec<BigInt> = ray.iter().map(|x| x / &g).collect();
            if !normalize {
                return Err(ConeError::NotPrimitive {
                    index,
                    ray: VecDisplay(ray),
                    suggestion: VecDisplay(primitive),
                });
            }
            primitive
        };
        if let Some(first) = rays.iter().position(|r| *r == ray) {
            return Err(ConeError::DuplicateRay {
                first,
                second: index,
            });
        }
        rays.push(ray);
    }
    Ok(rays)
}

/// Nonnegative combination `Σ λ_j rays[j] = target` over the given indices.
fn nonnegative_combination(
    rank: usize,
    rays: &[Vec<BigInt>],
    indices: &[usize],
    target: &[BigInt],
    normalized: bool,
) -> Option<Combination> {
    let k = indices.len();
    let mut sys = LinearSystem::new(k);
    for c in 0..rank {
        let coeffs = indices.iter().map(|&j| rays[j][c].clone()).collect();
        sys.add_equality(coeffs, target[c].clone()).expect("k coefficients");
    }
    for i in 0..k {
        let mut e = vec![BigInt::zero(); k];
        e[i] = BigInt::one();
        sys.add_inequality(e, BigRational::zero(), false).expect("k coefficients");
    }
    if normalized {
        sys.add_equality(vec![BigInt::one(); k], BigInt::one()).expect("k coefficients");
    }
    match rational_feasible(&sys) {
        Feasibility::Feasible(w) => Some(Combination(
            indices
                .iter()
                .zip(w)
                .filter(|(_, c)| !c.is_zero())
                .map(|(&i, c)| (i, c))
                .collect(),
        )),
        Feasibility::Infeasible => None,
    }
}

impl Cone {
    /// Validates rays (kept in input order) and precomputes the face lattice.
    ///
    /// With `normalize`, non-primitive rays are divided by their content
    /// instead of being rejected.
    pub fn new(rank: usize, raw_rays: Vec<Vec<BigInt>>, normalize: bool) -> Result<Cone, ConeError> {
        let rays = prepare_rays(rank, raw_rays, normalize)?;
        let dim = if rays.is_empty() {
            0
        } else {
            crate::linalg::rank(&IntegerMatrix::from_rows(rank, rays.clone()))
        };
        if dim != rank {
            return Err(ConeError::NotFullDimensional { dim, rank });
        }
        let all: Vec<usize> = (0..rays.len()).collect();
        if !rays.is_empty() {
            if let Some(combination) =
                nonnegative_combination(rank, &rays, &all, &vec![BigInt::zero(); rank], true)
            {
                return Err(ConeError::NotPointed { combination });
            }
        }
        for i in 0..rays.len() {
            let others: Vec<usize> = all.iter().copied().filter(|&j| j != i).collect();
            if let Some(combination) = nonnegative_combination(rank, &rays, &others, &rays[i], false)
            {
                return Err(ConeError::NotExtremal {
                    index: i,
                    combination,
                });
            }
        }
        let facets = compute_facets(rank, &rays);
        let faces = compute_faces(rank, &rays, &facets);
        Ok(Cone {
            rank,
            rays,
            facets,
            faces,
        })
    }

    pub fn from_i64(rank: usize, rays: &[&[i64]]) -> Result<Cone, ConeError> {
        Cone::new(
            rank,
            rays.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            false,
        )
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    /// Rays as the rows of a `#rays x rank` matrix (the map `m -> (<v, m>)_v`).
    pub fn ray_matrix(&self) -> IntegerMatrix {
        IntegerMatrix::from_rows(self.rank, self.rays.clone())
    }

    /// One primitive inner normal per facet, sorted.
    pub fn facet_normals(&self) -> &[Vec<BigInt>] {
        &self.facets
    }

    /// All faces, apex and the cone included, sorted by `(dim, rays)`.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, rays: &[usize]) -> Option<&Face> {
        let mut sorted = rays.to_vec();
        sorted.sort_unstable();
        self.faces.iter().find(|f| f.rays == sorted)
    }

    pub fn face_index(&self, face: &Face) -> Option<usize> {
        self.faces.iter().position(|f| f == face)
    }

    pub fn apex(&self) -> &Face {
        &self.faces[0]
    }

    pub fn whole(&self) -> &Face {
        self.faces.last().expect("face lattice is never empty")
    }

    /// Whether the face's rays extend to a basis of the lattice.
    pub fn is_smooth_face(&self, face: &Face) -> bool {
        if face.rays.is_empty() {
            return true;
        }
        if face.rays.len() != face.dim {
            return false;
        }
        let m = IntegerMatrix::from_rows(
            self.rank,
            face.rays.iter().map(|&i| self.rays[i].clone()).collect(),
        );
        let factors = smith_normal_form(&m).invariant_factors();
        factors.len() == face.dim && factors.iter().all(One::is_one)
    }

    /// `pairing[i][j] = <ray_i, normal_j>`.
    pub fn pairing_matrix(&self) -> Vec<Vec<BigInt>> {
        self.rays
            .iter()
            .map(|v| self.facets.iter().map(|u| dot(v, u)).collect())
            .collect()
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn compute_facets(rank: usize, rays: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if rank == 0 {
        return Vec::new();
    }
    let mut normals = BTreeSet::new();
    for subset in subsets(rays.len(), rank - 1) {
        let m = IntegerMatrix::from_rows(rank, subset.iter().map(|&i| rays[i].clone()).collect());
        let kernel = integer_kernel(&m);
        if kernel.len() != 1 {
            continue;
        }
        let mut u = kernel.into_iter().next().expect("one kernel vector");
        let signs: Vec<BigInt> = rays.iter().map(|v| dot(v, &u)).collect();
        let has_pos = signs.iter().any(Signed::is_positive);
        let has_neg = signs.iter().any(Signed::is_negative);
        match (has_pos, has_neg) {
            (true, true) => continue,
            (false, true) => u.iter_mut().for_each(|x| *x = -x.clone()),
            _ => {}
        }
        normals.insert(u);
    }
    normals.into_iter().collect()
}

fn compute_faces(rank: usize, rays: &[Vec<BigInt>], facets: &[Vec<BigInt>]) -> Vec<Face> {
    let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    sets.insert((0..rays.len()).collect());
    for u in facets {
        let zero: Vec<usize> = (0..rays.len()).filter(|&i| dot(&rays[i], u).is_zero()).collect();
        let current: Vec<Vec<usize>> = sets.iter().cloned().collect();
        for f in current {
            let meet: Vec<usize> = f.iter().copied().filter(|i| zero.contains(i)).collect();
            sets.insert(meet);
        }
    }
    let mut faces: Vec<Face> = sets
        .into_iter()
        .map(|r| {
            let dim = if r.is_empty() {
                0
            } else {
                rank_of(rank, rays, &r)
            };
            Face { dim, rays: r }
        })
        .collect();
    faces.sort();
    faces
}

fn rank_of(n: usize, rays: &[Vec<BigInt>], idx: &[usize]) -> usize {
    rank(&IntegerMatrix::from_rows(n, idx.iter().map(|&i| rays[i].clone()).collect()))
}

/// A possibly degenerate cone rewritten as a full-dimensional cone in the
/// saturated sublattice spanned by its rays, times a torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerateSplit {
    /// Rows form a basis of `span(rays) ∩ Z^n`.
    pub sublattice_basis: Vec<Vec<BigInt>>,
    pub cone: Cone,
    pub torus_rank: usize,
}

impl DegenerateSplit {
    /// Rays of the induced cone mapped back into the ambient lattice.
    pub fn embedded_rays(&self) -> Vec<Vec<BigInt>> {
        let n = self.ambient_rank();
        self.cone
            .rays()
            .iter()
            .map(|c| {
                let mut v = vec![BigInt::zero(); n];
                for (ci, b) in c.iter().zip(&self.sublattice_basis) {
                    for (x, bi) in v.iter_mut().zip(b) {
                        *x += ci * bi;
                    }
                }
                v
            })
            .collect()
    }

    pub fn ambient_rank(&self) -> usize {
        self.cone.rank() + self.torus_rank
    }
}

pub fn split_degenerate(
    rank: usize,
    raw_rays: Vec<Vec<BigInt>>,
    normalize: bool,
) -> Result<DegenerateSplit, ConeError> {
    let rays = prepare_rays(rank, raw_rays, normalize)?;
    if rays.is_empty() {
        return Ok(DegenerateSplit {
            sublattice_basis: Vec::new(),
            cone: Cone::new(0, Vec::new(), false)?,
            torus_rank: rank,
        });
    }
    let r = IntegerMatrix::from_rows(rank, rays.clone());
    let orthogonal = integer_kernel(&r);
    let basis = if orthogonal.is_empty() {
        IntegerMatrix::identity(rank).to_rows()
    } else {
        integer_kernel(&IntegerMatrix::from_rows(rank, orthogonal))
    };
    let d = basis.len();
    let bt = IntegerMatrix::from_rows(rank, basis.clone()).transpose();
    let coords = rays
        .iter()
        .map(|v| match solve_matrix(&bt, v) {
            IntegerSolution::Solvable { particular, .. } => particular,
            IntegerSolution::Unsolvable => unreachable!("rays lie in their saturated span"),
        })
        .collect();
    Ok(DegenerateSplit {
        sublattice_basis: basis,
        cone: Cone::new(d, coords, false)?,
        torus_rank: rank - d,
    })
}
