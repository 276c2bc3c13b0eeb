//! Demazure roots and the orbit-connection test between adjacent faces.
//!
//! A root `e ∈ M` pairs to `-1` with exactly one ray (its distinguished ray)
//! and nonnegatively with all others. Two orbits `O_{f1}`, `O_{f2}` are joined
//! by the root subgroup of `e` when `e` vanishes on `f1`, is nonpositive on
//! `f2`, and `f1 = f2 ∩ e^⊥` is a facet of `f2`; with the sign pattern of a
//! root this means `f2 = f1 + τ` for the distinguished ray `τ`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cone::{Cone, Face};
use crate::linalg::{dot, lattice_points_in_box, rational_feasible, solve_integer_system, LinearSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("face {0} is not a face of this cone")]
    UnknownFace(Face),
    #[error("box bound must be at least 1")]
    ZeroBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DemazureRoot {
    pub e: Vec<BigInt>,
    pub distinguished_ray: usize,
}

impl DemazureRoot {
    /// Checks the pairing conditions against `c` from scratch.
    pub fn is_valid_for(&self, c: &Cone) -> bool {
        self.e.len() == c.rank()
            && self.distinguished_ray < c.num_rays()
            && c.rays().iter().enumerate().all(|(i, v)| {
                let p = dot(v, &self.e);
                if i == self.distinguished_ray {
                    p == -BigInt::one()
                } else {
                    !p.is_negative()
                }
            })
    }
}

impl fmt::Display for DemazureRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.e.iter().map(ToString::to_string).collect();
        write!(f, "({}) on ray {}", parts.join(","), self.distinguished_ray + 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NoReason {
    /// The larger face is not the smaller one plus a single ray.
    Combinatorial,
    /// The equalities have no integer solution.
    IntegralEqualities,
    /// The full system has no rational solution.
    Rational,
}

impl NoReason {
    pub fn as_str(self) -> &'static str {
        match self {
            NoReason::Combinatorial => "combinatorial",
            NoReason::IntegralEqualities => "integral-equalities",
            NoReason::Rational => "rational",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConnectionVerdict {
    Yes(DemazureRoot),
    No(NoReason),
    Inconclusive { bound: u64 },
}

impl ConnectionVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, ConnectionVerdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, ConnectionVerdict::No(_))
    }
}

impl fmt::Display for ConnectionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConnectionVerdict::Yes(r) => write!(f, "Yes e = {r}"),
            ConnectionVerdict::No(reason) => write!(f, "No ({})", reason.as_str()),
            ConnectionVerdict::Inconclusive { bound } => write!(f, "Inconclusive (bound {bound})"),
        }
    }
}

/// `10 * max |ray coordinate|`, at least 1.
pub fn default_box_bound(c: &Cone) -> u64 {
    let m = c
        .rays()
        .iter()
        .flatten()
        .map(|x| x.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    let m: u64 = m.try_into().unwrap_or(u64::MAX / 10);
    (10 * m).max(1)
}

fn root_system(c: &Cone, tau: usize, vanish: &[usize]) -> LinearSystem {
    let mut sys = LinearSystem::new(c.rank());
    for (i, v) in c.rays().iter().enumerate() {
        let res = if i == tau {
            sys.add_equality(v.clone(), -BigInt::one())
        } else if vanish.contains(&i) {
            sys.add_equality(v.clone(), BigInt::zero())
        } else {
            sys.add_inequality(v.clone(), Zero::zero(), false)
        };
        res.expect("rays have the cone's rank");
    }
    sys
}

/// All roots with coordinates in `[-box_bound, box_bound]`, grouped by
/// distinguished ray and lexicographic within each group.
pub fn enumerate_roots(c: &Cone, box_bound: u64) -> Result<Vec<DemazureRoot>, RootError> {
    if box_bound == 0 {
        return Err(RootError::ZeroBound);
    }
    let b = BigInt::from(box_bound);
    let lower = vec![-b.clone(); c.rank()];
    let upper = vec![b; c.rank()];
    let mut out = Vec::new();
    for tau in 0..c.num_rays() {
        let sys = root_system(c, tau, &[]);
        for e in lattice_points_in_box(&sys, &lower, &upper, None) {
            let root = DemazureRoot {
                e,
                distinguished_ray: tau,
            };
            assert!(root.is_valid_for(c), "enumerated vector fails the root conditions");
            out.push(root);
        }
    }
    Ok(out)
}

/// Decides whether the orbits of `face1` and `face2` are joined by a root
/// subgroup. A `Yes` witness has the smallest possible max-norm, and is
/// lexicographically first among those.
pub fn connection_exists(
    c: &Cone,
    face1: &Face,
    face2: &Face,
    box_bound: u64,
) -> Result<ConnectionVerdict, RootError> {
    for f in [face1, face2] {
        if c.face_index(f).is_none() {
            return Err(RootError::UnknownFace(f.clone()));
        }
    }
    let extra: Vec<usize> = face2
        .rays()
        .iter()
        .copied()
        .filter(|&r| !face1.contains_ray(r))
        .collect();
    if !face1.is_subface_of(face2) || extra.len() != 1 || face2.dim() != face1.dim() + 1 {
        return Ok(ConnectionVerdict::No(NoReason::Combinatorial));
    }
    let tau = extra[0];
    let sys = root_system(c, tau, face1.rays());

    let mut equalities = LinearSystem::new(c.rank());
    for eq in sys.equalities() {
        equalities
            .add_equality(eq.coeffs.clone(), eq.rhs.clone())
            .expect("same dimension");
    }
    if !solve_integer_system(&equalities).is_solvable() {
        return Ok(ConnectionVerdict::No(NoReason::IntegralEqualities));
    }
    if !rational_feasible(&sys).is_feasible() {
        return Ok(ConnectionVerdict::No(NoReason::Rational));
    }
    for radius in 1..=box_bound.max(1) {
        let b = BigInt::from(radius);
        let lower = vec![-b.clone(); c.rank()];
        let upper = vec![b; c.rank()];
        if lattice_points_in_box(&sys, &lower, &upper, Some(1)).is_empty() {
            continue;
        }
        let e = lattice_points_in_box(&sys, &lower, &upper, None)
            .into_iter()
            .next()
            .expect("a point was found at this radius");
        let root = DemazureRoot {
            e,
            distinguished_ray: tau,
        };
        assert!(root.is_valid_for(c), "witness fails the root conditions");
        return Ok(ConnectionVerdict::Yes(root));
    }
    Ok(ConnectionVerdict::Inconclusive { bound: box_bound })
}

/// A candidate pair `(from, to)` of face indices, `to` = `from` plus one ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub from: usize,
    pub to: usize,
    pub verdict: ConnectionVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionGraph {
    pub faces: Vec<Face>,
    pub candidates: Vec<Candidate>,
}

pub fn connection_graph(c: &Cone, box_bound: u64) -> ConnectionGraph {
    let faces = c.faces().to_vec();
    let mut candidates = Vec::new();
    for (i, f1) in faces.iter().enumerate() {
        for tau in (0..c.num_rays()).filter(|&t| !f1.contains_ray(t)) {
            let mut rays = f1.rays().to_vec();
            rays.push(tau);
            rays.sort_unstable();
            let Some(f2) = c.face(&rays) else { continue };
            let j = c.face_index(f2).expect("face of this cone");
            let verdict = connection_exists(c, f1, f2, box_bound).expect("faces of this cone");
            candidates.push(Candidate {
                from: i,
                to: j,
                verdict,
            });
        }
    }
    ConnectionGraph { faces, candidates }
}

impl ConnectionGraph {
    pub fn yes_edges(&self) -> impl Iterator<Item = &Candidate> {
        self.candidates.iter().filter(|c| c.verdict.is_yes())
    }

    pub fn all_conclusive(&self) -> bool {
        self.candidates
            .iter()
            .all(|c| !matches!(c.verdict, ConnectionVerdict::Inconclusive { .. }))
    }

    /// Component label per face under the Yes edges; labels are the smallest
    /// face index in each component.
    pub fn components(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.faces.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for e in self.yes_edges() {
            let (a, b) = (find(&mut parent, e.from), find(&mut parent, e.to));
            let (lo, hi) = (a.min(b), a.max(b));
            parent[hi] = lo;
        }
        (0..self.faces.len()).map(|i| find(&mut parent, i)).collect()
    }

    /// Faces without an incident Yes edge, with whether every incident
    /// candidate pair was a certified No.
    pub fn isolated_faces(&self) -> Vec<(Face, bool)> {
        self.faces
            .iter()
            .enumerate()
            .filter_map(|(i, f)| {
                let incident: Vec<&Candidate> = self
                    .candidates
                    .iter()
                    .filter(|c| c.from == i || c.to == i)
                    .collect();
                if incident.iter().any(|c| c.verdict.is_yes()) {
                    None
                } else {
                    Some((f.clone(), incident.iter().all(|c| c.verdict.is_no())))
                }
            })
            .collect()
    }
}
