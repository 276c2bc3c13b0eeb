//! Orbit decomposition of an affine toric variety, computed three ways.
//!
//! * route A: faces grouped by the subgroup `G(O)` of the class group;
//! * route B: Luna strata of the Cox weight system, pulled back to faces
//!   through `f -> dset(f)`;
//! * route C: connected components of the root-connection graph.
//!
//! A and B must agree exactly; C must refine A, and is reported as
//! confirming it only when every candidate pair got a conclusive verdict.
//! The resulting strata are the orbits of the connected automorphism group.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::abelian::{FgAbGroup, SubgroupHandle};
use crate::cone::{split_degenerate, Cone, ConeError, Face};
use crate::divisors::{DivisorError, FaceOrbitData, SemigroupCheck, ToricData};
use crate::luna::{cox_weight_system, face_support_bridge, luna_strata, LunaError, Support};
use crate::roots::{connection_graph, default_box_bound, ConnectionGraph, ConnectionVerdict};

pub const REPORT_SCHEMA: u32 = 1;
pub const DEFAULT_COEFF_BOUND: u64 = 16;

#[derive(Debug, Error)]
pub enum StrataError {
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Divisor(#[from] DivisorError),
    #[error(transparent)]
    Luna(#[from] LunaError),
    #[error("subgroup partition and Luna strata disagree: {0}")]
    RouteMismatch(String),
    #[error("root connection joins faces {from} and {to} from different strata")]
    ConnectionCrossesStrata { from: Face, to: Face },
    #[error("principal stratum check failed: {0}")]
    Principal(String),
    #[error("closure order check failed: {0}")]
    ClosureOrder(String),
    #[error("{} unresolved finding(s) under strict mode", .0.warnings.len())]
    Unresolved(Box<StratificationReport>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratifyOptions {
    /// Box bound for connection witnesses; `None` uses the roots default.
    pub box_bound: Option<u64>,
    pub coeff_bound: u64,
    pub strict: bool,
    pub normalize: bool,
}

impl Default for StratifyOptions {
    fn default() -> Self {
        StratifyOptions {
            box_bound: None,
            coeff_bound: DEFAULT_COEFF_BOUND,
            strict: false,
            normalize: false,
        }
    }
}

/// Integer that serializes as a JSON number when it fits in `i64` and as a
/// decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JsonInt(pub BigInt);

impl From<&BigInt> for JsonInt {
    fn from(x: &BigInt) -> Self {
        JsonInt(x.clone())
    }
}

impl fmt::Display for JsonInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonInt;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonInt, E> {
                v.parse().map(JsonInt).map_err(|_| E::custom(format!("not an integer: {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

pub fn json_vec(v: &[BigInt]) -> Vec<JsonInt> {
    v.iter().map(JsonInt::from).collect()
}

fn json_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<JsonInt>> {
    rows.iter().map(|r| json_vec(r)).collect()
}

/// Ray indices, 1-based.
fn ray_list(f: &Face) -> Vec<usize> {
    f.rays().iter().map(|r| r + 1).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub rank: usize,
    pub rays: Vec<Vec<JsonInt>>,
    pub normalize: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRecord {
    pub description: String,
    pub free_rank: usize,
    pub torsion: Vec<JsonInt>,
}

impl From<&FgAbGroup> for GroupRecord {
    fn from(g: &FgAbGroup) -> Self {
        GroupRecord {
            description: g.to_string(),
            free_rank: g.free_rank(),
            torsion: json_vec(g.torsion()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupRecord {
    pub description: String,
    /// Hermite basis of the preimage lattice in the coordinates of the class group.
    pub basis: Vec<Vec<JsonInt>>,
}

impl From<&SubgroupHandle> for SubgroupRecord {
    fn from(s: &SubgroupHandle) -> Self {
        SubgroupRecord {
            description: s.to_string(),
            basis: json_rows(s.basis()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceRecord {
    pub rays: Vec<usize>,
    pub dim: usize,
    pub orbit_dim: usize,
    pub dset: Vec<usize>,
    pub g_subgroup: SubgroupRecord,
    pub local_class_group: GroupRecord,
    pub smooth: bool,
    pub stratum: usize,
    pub semigroup: String,
    pub semigroup_unresolved_rays: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumRecord {
    pub subgroup: SubgroupRecord,
    pub faces: Vec<Vec<usize>>,
    pub dim: usize,
    pub smooth: bool,
    pub principal: bool,
    pub luna_supports: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureEdge {
    pub below: usize,
    pub above: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionRecord {
    pub from: Vec<usize>,
    pub to: Vec<usize>,
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<JsonInt>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distinguished_ray: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u64>,
}

impl ConnectionRecord {
    pub fn new(from: &Face, to: &Face, v: &ConnectionVerdict) -> Self {
        let mut r = ConnectionRecord {
            from: ray_list(from),
            to: ray_list(to),
            verdict: String::new(),
            reason: None,
            witness: None,
            distinguished_ray: None,
            bound: None,
        };
        match v {
            ConnectionVerdict::Yes(root) => {
                r.verdict = "yes".into();
                r.witness = Some(json_vec(&root.e));
                r.distinguished_ray = Some(root.distinguished_ray + 1);
            }
            ConnectionVerdict::No(reason) => {
                r.verdict = "no".into();
                r.reason = Some(reason.as_str().into());
            }
            ConnectionVerdict::Inconclusive { bound } => {
                r.verdict = "inconclusive".into();
                r.bound = Some(*bound);
            }
        }
        r
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossChecks {
    /// Route A (subgroups) against route B (Luna strata): always "agree" in a
    /// returned report, since disagreement is an error.
    pub subgroups_vs_luna: String,
    /// "confirmed", "refines-unresolved" or "strictly-finer".
    pub connection_graph: String,
    pub face_support_bridge: String,
    pub semigroup_checked_faces: usize,
    pub semigroup_inconclusive_faces: usize,
    pub principal_is_smooth_locus: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratificationReport {
    pub schema: u32,
    pub input: InputEcho,
    pub torus_rank: usize,
    pub cone_rank: usize,
    pub sublattice_basis: Vec<Vec<JsonInt>>,
    /// Rays of the cone after splitting off the torus, in its own lattice.
    pub cone_rays: Vec<Vec<JsonInt>>,
    pub box_bound: u64,
    pub coeff_bound: u64,
    pub class_group: GroupRecord,
    pub divisor_classes: Vec<Vec<JsonInt>>,
    pub faces: Vec<FaceRecord>,
    pub strata: Vec<StratumRecord>,
    pub closure_order: Vec<ClosureEdge>,
    pub connections: Vec<ConnectionRecord>,
    pub cross_checks: CrossChecks,
    pub warnings: Vec<String>,
    pub provenance: String,
}

const PROVENANCE: &str = "Strata are the orbits of the connected automorphism group on the \
strength of the equivalence of subgroup, local class group and Luna conditions; that \
identification is not computed independently. Orbits of the full automorphism group are \
unions of these strata.";

/// Runs all three routes on the cone spanned by `raw_rays` in `Z^rank`.
pub fn stratify(
    rank: usize,
    raw_rays: Vec<Vec<BigInt>>,
    options: &StratifyOptions,
) -> Result<StratificationReport, StrataError> {
    let input = InputEcho {
        rank,
        rays: json_rows(&raw_rays),
        normalize: options.normalize,
    };
    let split = split_degenerate(rank, raw_rays, options.normalize)?;
    let cone = split.cone.clone();
    let box_bound = options.box_bound.unwrap_or_else(|| default_box_bound(&cone));
    let t = ToricData::new(cone.clone());
    let data = t.all_face_data();
    let mut warnings = Vec::new();

    // route A
    let (strata_faces, subgroups) = partition_by_subgroup(&data);
    let stratum_of: Vec<usize> = {
        let mut s = vec![0; data.len()];
        for (k, members) in strata_faces.iter().enumerate() {
            for &i in members {
                s[i] = k;
            }
        }
        s
    };

    // route B
    let bridge = face_support_bridge(&t)?;
    let luna = luna_strata(&cox_weight_system(&t))?;
    let mut luna_of: HashMap<&Support, usize> = HashMap::new();
    for (k, s) in luna.iter().enumerate() {
        for sup in &s.supports {
            luna_of.insert(sup, k);
        }
    }
    let mut luna_for_stratum = vec![None; strata_faces.len()];
    for (i, (_, sup)) in bridge.iter().enumerate() {
        let l = *luna_of
            .get(sup)
            .ok_or_else(|| StrataError::RouteMismatch(format!("support {sup} is in no Luna stratum")))?;
        let a = stratum_of[i];
        match luna_for_stratum[a] {
            None => luna_for_stratum[a] = Some(l),
            Some(prev) if prev == l => {}
            Some(prev) => {
                return Err(StrataError::RouteMismatch(format!(
                    "faces of one subgroup class fall in Luna strata {prev} and {l}"
                )))
            }
        }
    }
    let luna_for_stratum: Vec<usize> = luna_for_stratum.into_iter().map(|l| l.expect("nonempty stratum")).collect();
    let mut distinct = luna_for_stratum.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != luna_for_stratum.len() || distinct.len() != luna.len() {
        return Err(StrataError::RouteMismatch(format!(
            "{} subgroup classes against {} Luna strata",
            strata_faces.len(),
            luna.len()
        )));
    }
    let orbit_dims: Vec<usize> = strata_faces
        .iter()
        .map(|m| m.iter().map(|&i| data[i].orbit_dim).max().expect("nonempty"))
        .collect();
    for (k, &l) in luna_for_stratum.iter().enumerate() {
        if luna[l].subgroup != subgroups[k] || luna[l].dim != orbit_dims[k] {
            return Err(StrataError::RouteMismatch(format!(
                "stratum {k}: subgroup or dimension differs from Luna stratum {l}"
            )));
        }
    }

    // route C
    let graph = connection_graph(&cone, box_bound);
    let connection_status = check_connections(&graph, &stratum_of, strata_faces.len(), &mut warnings)?;

    // semigroup = group
    let mut semigroup = Vec::with_capacity(data.len());
    let mut inconclusive_faces = 0;
    for d in &data {
        match t.verify_semigroup_equals_group(&d.face, options.coeff_bound)? {
            SemigroupCheck::Verified => semigroup.push(("verified", Vec::new())),
            SemigroupCheck::Inconclusive { unresolved } => {
                inconclusive_faces += 1;
                warnings.push(format!(
                    "face {}: semigroup membership unresolved for rays {:?} at coefficient bound {}",
                    d.face,
                    unresolved.iter().map(|r| r + 1).collect::<Vec<_>>(),
                    options.coeff_bound
                ));
                semigroup.push(("inconclusive", unresolved.iter().map(|r| r + 1).collect()));
            }
        }
    }

    // principal stratum
    let principal: Vec<bool> = subgroups.iter().map(SubgroupHandle::is_whole).collect();
    if principal.iter().filter(|&&p| p).count() != 1 || !principal[stratum_of[0]] {
        return Err(StrataError::Principal(
            "expected exactly one stratum with the full class group, containing the apex".into(),
        ));
    }
    let p = stratum_of[0];
    let smooth_faces: Vec<usize> = (0..data.len()).filter(|&i| data[i].smooth).collect();
    if smooth_faces != strata_faces[p] {
        return Err(StrataError::Principal(
            "principal stratum differs from the set of smooth faces".into(),
        ));
    }

    let closure_order = closure_order(&subgroups);
    for e in &closure_order {
        if orbit_dims[e.below] > orbit_dims[e.above] {
            return Err(StrataError::ClosureOrder(format!(
                "stratum {} lies below {} but has larger dimension",
                e.below, e.above
            )));
        }
    }
    if (0..subgroups.len()).any(|k| !subgroups[k].is_subgroup_of(&subgroups[p]).expect("same parent")) {
        return Err(StrataError::ClosureOrder("principal stratum is not the maximum".into()));
    }

    let faces = data
        .iter()
        .zip(&semigroup)
        .enumerate()
        .map(|(i, (d, (status, unresolved)))| FaceRecord {
            rays: ray_list(&d.face),
            dim: d.face.dim(),
            orbit_dim: d.orbit_dim + split.torus_rank,
            dset: d.dset.iter().map(|r| r + 1).collect(),
            g_subgroup: (&d.g_subgroup).into(),
            local_class_group: (&d.local_class_group).into(),
            smooth: d.smooth,
            stratum: stratum_of[i],
            semigroup: status.to_string(),
            semigroup_unresolved_rays: unresolved.clone(),
        })
        .collect();
    let strata = strata_faces
        .iter()
        .enumerate()
        .map(|(k, members)| StratumRecord {
            subgroup: (&subgroups[k]).into(),
            faces: members.iter().map(|&i| ray_list(&data[i].face)).collect(),
            dim: orbit_dims[k] + split.torus_rank,
            smooth: members.iter().all(|&i| data[i].smooth),
            principal: principal[k],
            luna_supports: luna[luna_for_stratum[k]]
                .supports
                .iter()
                .map(|s| s.indices().iter().map(|r| r + 1).collect())
                .collect(),
        })
        .collect();
    let connections = graph
        .candidates
        .iter()
        .map(|c| ConnectionRecord::new(&graph.faces[c.from], &graph.faces[c.to], &c.verdict))
        .collect();

    let report = StratificationReport {
        schema: REPORT_SCHEMA,
        input,
        torus_rank: split.torus_rank,
        cone_rank: cone.rank(),
        sublattice_basis: json_rows(&split.sublattice_basis),
        cone_rays: json_rows(cone.rays()),
        box_bound,
        coeff_bound: options.coeff_bound,
        class_group: t.class_group().into(),
        divisor_classes: t.divisor_classes().iter().map(|c| json_vec(c.coords())).collect(),
        faces,
        strata,
        closure_order,
        connections,
        cross_checks: CrossChecks {
            subgroups_vs_luna: "agree".into(),
            connection_graph: connection_status.into(),
            face_support_bridge: "verified".into(),
            semigroup_checked_faces: data.len(),
            semigroup_inconclusive_faces: inconclusive_faces,
            principal_is_smooth_locus: true,
        },
        warnings,
        provenance: PROVENANCE.into(),
    };
    if options.strict && !report.warnings.is_empty() {
        return Err(StrataError::Unresolved(Box::new(report)));
    }
    Ok(report)
}

/// Faces grouped by equal `G(O)`; groups sorted by decreasing orbit dimension,
/// then by first face.
fn partition_by_subgroup(data: &[FaceOrbitData]) -> (Vec<Vec<usize>>, Vec<SubgroupHandle>) {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut subgroups: Vec<SubgroupHandle> = Vec::new();
    let mut index: HashMap<&SubgroupHandle, usize> = HashMap::new();
    for (i, d) in data.iter().enumerate() {
        let k = *index.entry(&d.g_subgroup).or_insert_with(|| {
            groups.push(Vec::new());
            subgroups.push(d.g_subgroup.clone());
            groups.len() - 1
        });
        groups[k].push(i);
    }
    let dim = |g: &Vec<usize>| g.iter().map(|&i| data[i].orbit_dim).max().unwrap_or(0);
    let mut order: Vec<usize> = (0..groups.len()).collect();
    order.sort_by(|&a, &b| dim(&groups[b]).cmp(&dim(&groups[a])).then(groups[a][0].cmp(&groups[b][0])));
    (
        order.iter().map(|&k| groups[k].clone()).collect(),
        order.iter().map(|&k| subgroups[k].clone()).collect(),
    )
}

fn check_connections(
    graph: &ConnectionGraph,
    stratum_of: &[usize],
    num_strata: usize,
    warnings: &mut Vec<String>,
) -> Result<&'static str, StrataError> {
    for e in graph.yes_edges() {
        if stratum_of[e.from] != stratum_of[e.to] {
            return Err(StrataError::ConnectionCrossesStrata {
                from: graph.faces[e.from].clone(),
                to: graph.faces[e.to].clone(),
            });
        }
    }
    for c in &graph.candidates {
        if let ConnectionVerdict::Inconclusive { bound } = c.verdict {
            warnings.push(format!(
                "connection {} -> {} unresolved within box bound {bound}",
                graph.faces[c.from], graph.faces[c.to]
            ));
        }
    }
    let mut components = graph.components();
    components.sort_unstable();
    components.dedup();
    Ok(if components.len() == num_strata {
        if graph.all_conclusive() {
            "confirmed"
        } else {
            "agrees-with-unresolved-pairs"
        }
    } else if graph.all_conclusive() {
        warnings.push(format!(
            "connection graph has {} components for {} strata although every pair is conclusive",
            components.len(),
            num_strata
        ));
        "strictly-finer"
    } else {
        "refines-unresolved"
    })
}

/// Transitive reduction of `s <= s'` iff `subgroup(s) ⊆ subgroup(s')`.
pub fn closure_order(subgroups: &[SubgroupHandle]) -> Vec<ClosureEdge> {
    let n = subgroups.len();
    let leq = |a: usize, b: usize| subgroups[a].is_subgroup_of(&subgroups[b]).expect("same parent");
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a == b || !leq(a, b) {
                continue;
            }
            let covered = (0..n).any(|c| c != a && c != b && leq(a, c) && leq(c, b));
            if !covered {
                edges.push(ClosureEdge { below: a, above: b });
            }
        }
    }
    edges
}

impl StratificationReport {
    pub fn stratum_count(&self) -> usize {
        self.strata.len()
    }

    pub fn principal(&self) -> &StratumRecord {
        self.strata.iter().find(|s| s.principal).expect("report has a principal stratum")
    }
}

/// Builds the cone used by [`stratify`] without running the routes.
pub fn prepared_cone(rank: usize, raw_rays: Vec<Vec<BigInt>>, normalize: bool) -> Result<Cone, ConeError> {
    Ok(split_degenerate(rank, raw_rays, normalize)?.cone)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vec;

    fn rays(r: &[&[i64]]) -> Vec<Vec<BigInt>> {
        r.iter().map(|v| int_vec(v)).collect()
    }

    fn run(rank: usize, r: &[&[i64]]) -> StratificationReport {
        stratify(rank, rays(r), &StratifyOptions::default()).unwrap()
    }

    #[test]
    fn quadrant() {
        let rep = run(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(rep.strata.len(), 1);
        let s = &rep.strata[0];
        assert!(s.principal && s.smooth);
        assert_eq!(s.dim, 2);
        assert!(rep.warnings.is_empty());
        assert!(rep.closure_order.is_empty());
        assert_eq!(rep.cross_checks.connection_graph, "confirmed");
    }

    #[test]
    fn a1_cone() {
        let rep = run(2, &[&[1, 0], &[1, 2]]);
        assert_eq!(rep.class_group.description, "Z/2");
        assert_eq!(rep.strata.len(), 2);
        assert_eq!((rep.strata[0].dim, rep.strata[1].dim), (2, 0));
        assert_eq!(rep.strata[0].faces, vec![vec![], vec![1], vec![2]]);
        assert_eq!(rep.strata[1].faces, vec![vec![1, 2]]);
        assert_eq!(rep.closure_order, vec![ClosureEdge { below: 1, above: 0 }]);
        assert_eq!(rep.cross_checks.connection_graph, "confirmed");
    }

    #[test]
    fn threefold() {
        let rep = run(3, &[&[1, 0, 0], &[1, 2, 0], &[0, 1, 2]]);
        assert_eq!(rep.class_group.description, "Z/4");
        let dims: Vec<usize> = rep.strata.iter().map(|s| s.dim).collect();
        assert_eq!(dims, vec![3, 1, 0]);
        assert_eq!(
            rep.strata[0].faces,
            vec![vec![], vec![1], vec![2], vec![3], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(rep.strata[1].faces, vec![vec![1, 2]]);
        assert_eq!(rep.strata[1].subgroup.description.split(" = ").next(), Some("Z/2"));
        assert_eq!(rep.strata[2].faces, vec![vec![1, 2, 3]]);
        assert_eq!(
            rep.closure_order,
            vec![ClosureEdge { below: 1, above: 0 }, ClosureEdge { below: 2, above: 1 }]
        );
        assert_eq!(rep.cross_checks.connection_graph, "confirmed");
        assert_eq!(rep.cross_checks.semigroup_inconclusive_faces, 0);
    }

    #[test]
    fn degenerate_input_adds_torus_dimensions() {
        let flat = run(3, &[&[1, 0, 0], &[1, 2, 0]]);
        let a1 = run(2, &[&[1, 0], &[1, 2]]);
        assert_eq!(flat.torus_rank, 1);
        assert_eq!(flat.strata.len(), a1.strata.len());
        for (f, a) in flat.strata.iter().zip(&a1.strata) {
            assert_eq!(f.dim, a.dim + 1);
            assert_eq!(f.faces, a.faces);
        }
        let torus = run(2, &[]);
        assert_eq!(torus.strata.len(), 1);
        assert_eq!(torus.strata[0].dim, 2);
    }

    #[test]
    fn invalid_input_is_an_error() {
        let err = stratify(2, rays(&[&[2, 4]]), &StratifyOptions::default()).unwrap_err();
        assert!(matches!(err, StrataError::Cone(ConeError::NotPrimitive { .. })));
        let opts = StratifyOptions {
            normalize: true,
            ..StratifyOptions::default()
        };
        assert!(stratify(2, rays(&[&[2, 4], &[1, 0]]), &opts).is_ok());
    }

    #[test]
    fn strict_mode_fails_on_unresolved_pairs() {
        // a bound of 1 is too small for the witness (2,-1,0)
        let opts = StratifyOptions {
            box_bound: Some(1),
            strict: true,
            ..StratifyOptions::default()
        };
        let r = rays(&[&[1, 0, 0], &[1, 2, 0], &[0, 1, 2]]);
        let Err(StrataError::Unresolved(rep)) = stratify(3, r.clone(), &opts) else {
            panic!("expected unresolved findings");
        };
        assert!(!rep.warnings.is_empty());
        let lax = StratifyOptions { strict: false, ..opts };
        let rep = stratify(3, r, &lax).unwrap();
        assert_eq!(rep.strata.len(), 3);
        assert_ne!(rep.cross_checks.connection_graph, "confirmed");
    }

    #[test]
    fn json_ints() {
        let small = JsonInt(BigInt::from(-7));
        assert_eq!(serde_json::to_string(&small).unwrap(), "-7");
        let big = JsonInt(BigInt::from(i64::MAX) * 4);
        let s = serde_json::to_string(&big).unwrap();
        assert_eq!(s, "\"36893488147419103228\"");
        assert_eq!(serde_json::from_str::<JsonInt>(&s).unwrap(), big);
        assert_eq!(serde_json::from_str::<JsonInt>("12").unwrap(), JsonInt(12.into()));
    }

    #[test]
    fn report_round_trips() {
        let rep = run(3, &[&[1, 0, 0], &[1, 2, 0], &[0, 1, 2]]);
        let text = serde_json::to_string_pretty(&rep).unwrap();
        let back: StratificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, rep);
        assert_eq!(serde_json::to_string_pretty(&back).unwrap(), text);
    }
}
