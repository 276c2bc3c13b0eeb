//! Class group data of an affine toric variety.
//!
//! `Cl(X)` is the cokernel of `M -> Z^rays`, `m -> (<v, m>)_v`. For the
//! torus orbit of a face, the invariant prime divisors not containing the
//! orbit are those whose rays lie outside the face; their classes generate
//! the subgroup `G(O)`, which is the kernel of `Cl(X) -> Cl(X, x)`.

use num_bigint::BigInt;
use thiserror::Error;

use crate::abelian::{FgAbGroup, GroupElement, Membership, SubgroupHandle};
use crate::cone::{Cone, Face};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DivisorError {
    #[error("face {0} is not a face of this cone")]
    UnknownFace(Face),
    #[error(
        "inverse of the class of ray {ray} is not in the semigroup of face {face}; \
         this contradicts G(O) = Gamma(O) and indicates a bug"
    )]
    SemigroupFalsified { face: Face, ray: usize },
}

#[derive(Clone, Debug)]
pub struct ToricData {
    cone: Cone,
    class_group: FgAbGroup,
    divisor_classes: Vec<GroupElement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceOrbitData {
    pub face: Face,
    /// Rays outside the face: the invariant divisors not containing the orbit.
    pub dset: Vec<usize>,
    pub g_subgroup: SubgroupHandle,
    pub local_class_group: FgAbGroup,
    pub orbit_dim: usize,
    pub smooth: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemigroupCheck {
    Verified,
    /// Rays whose inverse class was not found within the coefficient bound.
    Inconclusive { unresolved: Vec<usize> },
}

impl ToricData {
    pub fn new(cone: Cone) -> ToricData {
        let (class_group, divisor_classes) = FgAbGroup::from_cokernel(&cone.ray_matrix());
        ToricData {
            cone,
            class_group,
            divisor_classes,
        }
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn class_group(&self) -> &FgAbGroup {
        &self.class_group
    }

    /// `[D_i]` in ray order.
    pub fn divisor_classes(&self) -> &[GroupElement] {
        &self.divisor_classes
    }

    pub fn faces(&self) -> &[Face] {
        self.cone.faces()
    }

    fn check_face(&self, face: &Face) -> Result<(), DivisorError> {
        if self.cone.face_index(face).is_some() {
            Ok(())
        } else {
            Err(DivisorError::UnknownFace(face.clone()))
        }
    }

    pub fn dset(&self, face: &Face) -> Vec<usize> {
        (0..self.cone.num_rays())
            .filter(|&i| !face.contains_ray(i))
            .collect()
    }

    pub fn classes_of(&self, rays: &[usize]) -> Vec<GroupElement> {
        rays.iter().map(|&i| self.divisor_classes[i].clone()).collect()
    }

    pub fn face_orbit_data(&self, face: &Face) -> Result<FaceOrbitData, DivisorError> {
        self.check_face(face)?;
        let dset = self.dset(face);
        let g_subgroup = self
            .class_group
            .subgroup(&self.classes_of(&dset))
            .expect("divisor classes belong to the class group");
        let local_class_group = self
            .class_group
            .quotient(&g_subgroup)
            .expect("subgroup of the class group");
        Ok(FaceOrbitData {
            face: face.clone(),
            dset,
            g_subgroup,
            local_class_group,
            orbit_dim: self.cone.rank() - face.dim(),
            smooth: self.cone.is_smooth_face(face),
        })
    }

    pub fn all_face_data(&self) -> Vec<FaceOrbitData> {
        self.faces()
            .iter()
            .map(|f| self.face_orbit_data(f).expect("face of this cone"))
            .collect()
    }

    /// Confirms that the semigroup generated by the classes outside the face
    /// contains the inverse of each of its generators, i.e. is a group.
    pub fn verify_semigroup_equals_group(
        &self,
        face: &Face,
        coeff_bound: u64,
    ) -> Result<SemigroupCheck, DivisorError> {
        self.check_face(face)?;
        let dset = self.dset(face);
        let gens = self.classes_of(&dset);
        let mut unresolved = Vec::new();
        for (&ray, g) in dset.iter().zip(&gens) {
            let target = self.class_group.neg(g);
            match self.class_group.semigroup_member(&gens, &target, coeff_bound) {
                Membership::Yes(c) => debug_assert!(self.combination_matches(&gens, &c, &target)),
                Membership::No => {
                    return Err(DivisorError::SemigroupFalsified {
                        face: face.clone(),
                        ray,
                    })
                }
                Membership::Inconclusive => unresolved.push(ray),
            }
        }
        Ok(if unresolved.is_empty() {
            SemigroupCheck::Verified
        } else {
            SemigroupCheck::Inconclusive { unresolved }
        })
    }

    fn combination_matches(&self, gens: &[GroupElement], c: &[BigInt], target: &GroupElement) -> bool {
        let g = &self.class_group;
        let sum = gens
            .iter()
            .zip(c)
            .fold(g.zero(), |acc, (x, k)| g.add(&acc, &g.scale(x, k)));
        &sum == target
    }
}
