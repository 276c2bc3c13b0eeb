//! Text and JSON listings for every command.

use std::fmt::Write;

use serde_json::{json, Value};
use toric_core::cone::{Cone, Face};
use toric_core::divisors::ToricData;
use toric_core::luna::{LunaStratum, Stability, Support, WeightSystem};
use toric_core::roots::{ConnectionGraph, DemazureRoot};
use toric_core::strata::{
    json_vec, ConnectionRecord, GroupRecord, StratificationReport, SubgroupRecord,
};

fn set(rays: &[usize]) -> String {
    let parts: Vec<String> = rays.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn one_based(s: &Support) -> Vec<usize> {
    s.indices().iter().map(|i| i + 1).collect()
}

pub fn stratification(r: &StratificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "cone: rank {}, {} rays, torus factor rank {}",
        r.input.rank,
        r.input.rays.len(),
        r.torus_rank
    );
    let _ = writeln!(out, "class group: {}", r.class_group.description);
    let _ = writeln!(out, "strata: {}", r.strata.len());
    for (k, s) in r.strata.iter().enumerate() {
        let mut flags = Vec::new();
        if s.principal {
            flags.push("principal");
        }
        if s.smooth {
            flags.push("smooth");
        }
        let _ = writeln!(
            out,
            "  [{k}] dim {}{}  subgroup {}",
            s.dim,
            if flags.is_empty() { String::new() } else { format!("  ({})", flags.join(", ")) },
            s.subgroup.description
        );
        let faces: Vec<String> = s.faces.iter().map(|f| set(f)).collect();
        let _ = writeln!(out, "      faces: {}", faces.join(" "));
    }
    let _ = writeln!(out, "closure order:");
    if r.closure_order.is_empty() {
        let _ = writeln!(out, "  (single stratum)");
    }
    for e in &r.closure_order {
        let _ = writeln!(
            out,
            "  [{}] {} <= [{}] {}",
            e.below,
            group_part(&r.strata[e.below].subgroup),
            e.above,
            group_part(&r.strata[e.above].subgroup)
        );
    }
    if let Some(chain) = chain(r) {
        let _ = writeln!(out, "  chain: {}", chain);
    }
    let c = &r.cross_checks;
    let _ = writeln!(out, "cross-checks:");
    let _ = writeln!(out, "  subgroup partition vs Luna strata: {}", c.subgroups_vs_luna);
    let _ = writeln!(out, "  face/support bridge: {}", c.face_support_bridge);
    let _ = writeln!(out, "  connection graph: {}", c.connection_graph);
    let _ = writeln!(
        out,
        "  semigroup = group: {} of {} faces verified",
        c.semigroup_checked_faces - c.semigroup_inconclusive_faces,
        c.semigroup_checked_faces
    );
    let _ = writeln!(out, "  principal stratum = smooth locus: {}", c.principal_is_smooth_locus);
    if r.warnings.is_empty() {
        let _ = writeln!(out, "warnings: none");
    } else {
        let _ = writeln!(out, "warnings:");
        for w in &r.warnings {
            let _ = writeln!(out, "  {w}");
        }
    }
    out
}

fn group_part(s: &SubgroupRecord) -> &str {
    s.description.split(" = ").next().unwrap_or(&s.description)
}

/// `0 ⊂ Z/2 ⊂ Z/4` style rendering when the order is a chain.
fn chain(r: &StratificationReport) -> Option<String> {
    let n = r.strata.len();
    if n < 2 || r.closure_order.len() != n - 1 {
        return None;
    }
    let mut bottom: Vec<usize> = (0..n)
        .filter(|k| !r.closure_order.iter().any(|e| e.above == *k))
        .collect();
    if bottom.len() != 1 {
        return None;
    }
    let mut order = vec![bottom.pop().expect("one element")];
    while order.len() < n {
        let last = *order.last().expect("nonempty");
        let next: Vec<usize> = r
            .closure_order
            .iter()
            .filter(|e| e.below == last)
            .map(|e| e.above)
            .collect();
        if next.len() != 1 {
            return None;
        }
        order.push(next[0]);
    }
    let parts: Vec<&str> = order.iter().map(|&k| group_part(&r.strata[k].subgroup)).collect();
    Some(parts.join(" ⊂ "))
}

pub fn roots(cone: &Cone, roots: &[DemazureRoot], bound: u64) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "roots with coordinates in [-{bound}, {bound}]: {}", roots.len());
    for tau in 0..cone.num_rays() {
        let group: Vec<&DemazureRoot> = roots.iter().filter(|r| r.distinguished_ray == tau).collect();
        let _ = writeln!(out, "  ray {} ({} roots)", tau + 1, group.len());
        for r in group {
            let parts: Vec<String> = r.e.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "    ({})", parts.join(","));
        }
    }
    out
}

pub fn roots_json(roots: &[DemazureRoot], bound: u64) -> Value {
    let list: Vec<Value> = roots
        .iter()
        .map(|r| json!({"ray": r.distinguished_ray + 1, "e": json_vec(&r.e)}))
        .collect();
    json!({"schema": 1, "bound": bound, "roots": list})
}

fn face_set(f: &Face) -> String {
    set(&f.rays().iter().map(|r| r + 1).collect::<Vec<_>>())
}

pub fn connections(g: &ConnectionGraph, bound: u64) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "candidate pairs (box bound {bound}): {}", g.candidates.len());
    for c in &g.candidates {
        let _ = writeln!(
            out,
            "  {} -> {}: {}",
            face_set(&g.faces[c.from]),
            face_set(&g.faces[c.to]),
            c.verdict
        );
    }
    let isolated = g.isolated_faces();
    if isolated.is_empty() {
        let _ = writeln!(out, "isolated faces: none");
    } else {
        let _ = writeln!(out, "isolated faces:");
        for (f, certified) in isolated {
            let _ = writeln!(
                out,
                "  {}{}",
                face_set(&f),
                if certified { " (certified)" } else { " (unresolved pairs)" }
            );
        }
    }
    out
}

pub fn connections_json(g: &ConnectionGraph, bound: u64) -> Value {
    let records: Vec<ConnectionRecord> = g
        .candidates
        .iter()
        .map(|c| ConnectionRecord::new(&g.faces[c.from], &g.faces[c.to], &c.verdict))
        .collect();
    let isolated: Vec<Value> = g
        .isolated_faces()
        .into_iter()
        .map(|(f, certified)| {
            json!({"face": f.rays().iter().map(|r| r + 1).collect::<Vec<_>>(), "fully_certified": certified})
        })
        .collect();
    json!({"schema": 1, "bound": bound, "connections": records, "isolated": isolated})
}

pub fn luna(w: &WeightSystem, strata: &[LunaStratum], stability: &Stability) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "group: {}, {} weights", w.group(), w.len());
    let _ = writeln!(out, "Luna strata: {}", strata.len());
    for (k, s) in strata.iter().enumerate() {
        let _ = writeln!(out, "  [{k}] dim {}  subgroup {}", s.dim, s.subgroup);
        let sups: Vec<String> = s.supports.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "      closed supports: {}", sups.join(" "));
    }
    out.push_str(&self::stability(stability));
    out
}

pub fn luna_json(w: &WeightSystem, strata: &[LunaStratum], stability: &Stability) -> Value {
    let list: Vec<Value> = strata
        .iter()
        .map(|s| {
            json!({
                "subgroup": SubgroupRecord::from(&s.subgroup),
                "dim": s.dim,
                "supports": s.supports.iter().map(one_based).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "schema": 1,
        "group": GroupRecord::from(w.group()),
        "strata": list,
        "stability": stability_json(stability),
    })
}

pub fn stability(s: &Stability) -> String {
    match s {
        Stability::Stable => "strongly stable: yes\n".to_string(),
        Stability::Unstable { offending } => {
            let sups: Vec<String> = offending.iter().map(ToString::to_string).collect();
            format!("strongly stable: no (offending supports: {})\n", sups.join(" "))
        }
    }
}

pub fn stability_json(s: &Stability) -> Value {
    match s {
        Stability::Stable => json!({"schema": 1, "stable": true, "offending": []}),
        Stability::Unstable { offending } => json!({
            "schema": 1,
            "stable": false,
            "offending": offending.iter().map(one_based).collect::<Vec<_>>(),
        }),
    }
}

pub fn class_group(t: &ToricData, torus_rank: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "class group: {}", t.class_group());
    if torus_rank > 0 {
        let _ = writeln!(out, "torus factor rank: {torus_rank}");
    }
    let _ = writeln!(out, "divisor classes:");
    for (i, c) in t.divisor_classes().iter().enumerate() {
        let _ = writeln!(out, "  D{} -> {}", i + 1, c);
    }
    let _ = writeln!(out, "faces:");
    for d in t.all_face_data() {
        let _ = writeln!(
            out,
            "  {}  G(O) {}  Cl(X,x) {}",
            d.face, d.g_subgroup, d.local_class_group
        );
    }
    out
}

pub fn class_group_json(t: &ToricData, torus_rank: usize) -> Value {
    let faces: Vec<Value> = t
        .all_face_data()
        .iter()
        .map(|d| {
            json!({
                "rays": d.face.rays().iter().map(|r| r + 1).collect::<Vec<_>>(),
                "g_subgroup": SubgroupRecord::from(&d.g_subgroup),
                "local_class_group": GroupRecord::from(&d.local_class_group),
            })
        })
        .collect();
    json!({
        "schema": 1,
        "torus_rank": torus_rank,
        "class_group": GroupRecord::from(t.class_group()),
        "divisor_classes": t.divisor_classes().iter().map(|c| json_vec(c.coords())).collect::<Vec<_>>(),
        "faces": faces,
    })
}
