use serde::{Deserialize, Serialize};

use super::{ParseError, ParseErrorKind};
use crate::antiramsey::Packing;
use crate::certificate::{Certificate, Solution};
use crate::graph::{ColoredGraph, DisjointSets, Disjointness, Forest, ForestFamily, VertexPartition};
use crate::partition::{deficiency_cd, deficiency_ext, deficiency_split, Deficiency, SplitDeficiency};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResultKind {
    Trees,
    Violation,
    ProvenAbsent,
    /// A partition check that found nothing to report.
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionDocument {
    pub assignment: Vec<usize>,
    pub required: usize,
    pub achieved: usize,
    pub deficiency: i64,
}

/// One partition per forest, for extension shortfalls no single partition
/// shows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitPartitionDocument {
    pub assignments: Vec<Vec<usize>>,
    pub required: usize,
    pub achieved: usize,
    pub deficiency: i64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DocumentStats {
    pub rounds: usize,
    pub moves: usize,
    pub partitions_scanned: u64,
    /// Only filled in on request, so that documents stay reproducible.
    pub wall_ms: Option<u64>,
}

/// The JSON form of a solver outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDocument {
    pub result: ResultKind,
    pub t: usize,
    pub mode: Disjointness,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trees: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<PartitionDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partitions: Option<SplitPartitionDocument>,
    pub stats: DocumentStats,
}

impl From<&Deficiency> for PartitionDocument {
    fn from(d: &Deficiency) -> Self {
        PartitionDocument {
            assignment: d.partition.assignment().to_vec(),
            required: d.required,
            achieved: d.achieved,
            deficiency: d.value,
        }
    }
}

impl From<&SplitDeficiency> for SplitPartitionDocument {
    fn from(d: &SplitDeficiency) -> Self {
        SplitPartitionDocument {
            assignments: d.partitions.iter().map(|p| p.assignment().to_vec()).collect(),
            required: d.required,
            achieved: d.achieved,
            deficiency: d.value,
        }
    }
}

fn tree_lists(fam: &ForestFamily) -> Vec<Vec<usize>> {
    fam.forests.iter().map(|f| f.edges().to_vec()).collect()
}

fn doc_error(msg: impl Into<String>) -> ParseError {
    ParseError::new(0, ParseErrorKind::Document(msg.into()))
}

impl CertificateDocument {
    pub fn from_solution(sol: &Solution, t: usize) -> Self {
        let stats = DocumentStats {
            rounds: sol.stats.rounds,
            moves: sol.stats.moves,
            partitions_scanned: sol.stats.partitions_scanned,
            wall_ms: None,
        };
        match &sol.certificate {
            Certificate::Trees(fam) => CertificateDocument {
                result: ResultKind::Trees,
                t,
                mode: sol.guarantee,
                trees: Some(tree_lists(fam)),
                partition: None,
                partitions: None,
                stats,
            },
            Certificate::Violation(d) => Self::violation(d, t, sol.guarantee, stats),
            Certificate::SplitViolation(d) => CertificateDocument {
                result: ResultKind::Violation,
                t,
                mode: sol.guarantee,
                trees: None,
                partition: None,
                partitions: Some(d.into()),
                stats,
            },
        }
    }

    pub fn violation(d: &Deficiency, t: usize, mode: Disjointness, stats: DocumentStats) -> Self {
        CertificateDocument {
            result: ResultKind::Violation,
            t,
            mode,
            trees: None,
            partition: Some(d.into()),
            partitions: None,
            stats,
        }
    }

    pub fn from_packing(p: &Packing, t: usize) -> Self {
        CertificateDocument {
            result: if p.trees().is_some() { ResultKind::Trees } else { ResultKind::ProvenAbsent },
            t,
            mode: Disjointness::EdgeDisjoint,
            trees: p.trees().map(tree_lists),
            partition: None,
            partitions: None,
            stats: DocumentStats::default(),
        }
    }

    pub fn none(t: usize, mode: Disjointness, partitions_scanned: u64) -> Self {
        CertificateDocument {
            result: ResultKind::None,
            t,
            mode,
            trees: None,
            partition: None,
            partitions: None,
            stats: DocumentStats {
                partitions_scanned,
                ..DocumentStats::default()
            },
        }
    }

    /// Pretty JSON with a trailing newline; [`CertificateDocument::parse`]
    /// inverts it byte for byte.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let doc: CertificateDocument = serde_json::from_str(text).map_err(|e| {
            ParseError::new(e.line(), ParseErrorKind::Document(e.to_string()))
        })?;
        let present = [doc.trees.is_some(), doc.partition.is_some(), doc.partitions.is_some()];
        let shape_ok = match doc.result {
            ResultKind::Trees => present == [true, false, false],
            ResultKind::Violation => present == [false, true, false] || present == [false, false, true],
            ResultKind::ProvenAbsent | ResultKind::None => present == [false; 3],
        };
        if !shape_ok {
            return Err(doc_error("result kind does not match the trees/partition fields present"));
        }
        Ok(doc)
    }

    /// Re-checks the document against the graph from first principles: trees
    /// are rainbow spanning trees with the claimed disjointness (containing
    /// `forests`, if given, and extending them with fresh distinct colors);
    /// a partition's counts are recomputed.
    pub fn recheck(&self, g: &ColoredGraph, forests: Option<&ForestFamily>) -> Result<(), String> {
        if let Some(trees) = &self.trees {
            check_trees(g, self.t, self.mode, trees, forests)?;
        }
        if let Some(p) = &self.partition {
            let partition = VertexPartition::from_rgs(p.assignment.clone())
                .filter(|q| q.vertex_count() == g.vertex_count())
                .ok_or("assignment is not a normalized partition of the vertices")?;
            let d = match forests {
                Some(fam) => deficiency_ext(g, fam, &partition, self.t),
                None => deficiency_cd(g, &partition, self.t),
            }
            .map_err(|e| e.to_string())?;
            if PartitionDocument::from(&d) != *p {
                return Err(format!(
                    "recomputed required {} achieved {}, document says {} and {}",
                    d.required, d.achieved, p.required, p.achieved
                ));
            }
            if d.value < 1 {
                return Err("partition does not violate the condition".into());
            }
        }
        if let Some(p) = &self.partitions {
            let fam = forests.ok_or("per-forest partitions need the forests")?;
            let partitions = p
                .assignments
                .iter()
                .map(|a| {
                    VertexPartition::from_rgs(a.clone())
                        .filter(|q| q.vertex_count() == g.vertex_count())
                        .ok_or("assignment is not a normalized partition of the vertices")
                })
                .collect::<Result<Vec<_>, _>>()?;
            let d = deficiency_split(g, fam, &partitions).map_err(|e| e.to_string())?;
            if SplitPartitionDocument::from(&d) != *p {
                return Err(format!(
                    "recomputed required {} achieved {}, document says {} and {}",
                    d.required, d.achieved, p.required, p.achieved
                ));
            }
            if !d.is_violation() {
                return Err("partitions do not violate the condition".into());
            }
        }
        Ok(())
    }
}

fn check_trees(
    g: &ColoredGraph,
    t: usize,
    mode: Disjointness,
    trees: &[Vec<usize>],
    forests: Option<&ForestFamily>,
) -> Result<(), String> {
    if trees.len() != t {
        return Err(format!("{} trees for t = {t}", trees.len()));
    }
    let n = g.vertex_count();
    let mut edge_owner = vec![None; g.edge_count()];
    let mut color_owner = vec![None; g.color_count()];
    for (i, tree) in trees.iter().enumerate() {
        if tree.len() + 1 != n.max(1) {
            return Err(format!("tree {i} has {} edges on {n} vertices", tree.len()));
        }
        let mut dsu = DisjointSets::new(n);
        let mut seen = vec![false; g.color_count()];
        for &e in tree {
            let edge = g.check_edge(e).map_err(|err| err.to_string())?;
            if !dsu.union(edge.u, edge.v) {
                return Err(format!("tree {i} has a cycle through edge {e}"));
            }
            if std::mem::replace(&mut seen[edge.color], true) {
                return Err(format!("tree {i} repeats color {}", edge.color));
            }
            if let Some(j) = edge_owner[e].replace(i) {
                return Err(format!("edge {e} is in trees {j} and {i}"));
            }
            match color_owner[edge.color] {
                Some(j) if j != i && mode == Disjointness::ColorDisjoint => {
                    return Err(format!("color {} is in trees {j} and {i}", edge.color));
                }
                _ => color_owner[edge.color] = Some(i),
            }
        }
    }
    if let Some(fam) = forests {
        check_extension(g, trees, &fam.forests)?;
    }
    Ok(())
}

fn check_extension(g: &ColoredGraph, trees: &[Vec<usize>], forests: &[Forest]) -> Result<(), String> {
    if trees.len() != forests.len() {
        return Err(format!("{} trees for {} forests", trees.len(), forests.len()));
    }
    let mut used = vec![false; g.color_count()];
    for f in forests {
        for &e in f.edges() {
            used[g.color(e)] = true;
        }
    }
    for (i, (tree, f)) in trees.iter().zip(forests).enumerate() {
        if let Some(e) = f.edges().iter().find(|e| !tree.contains(e)) {
            return Err(format!("tree {i} drops forced edge {e}"));
        }
        for &e in tree.iter().filter(|e| !f.contains(**e)) {
            if std::mem::replace(&mut used[g.color(e)], true) {
                return Err(format!("added edge {e} reuses color {}", g.color(e)));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color_disjoint::solve_color_disjoint;
    use proptest::prelude::*;

    #[test]
    fn solution_documents_recheck() {
        let k4 = ColoredGraph::rainbow_complete(4);
        let doc = CertificateDocument::from_solution(&solve_color_disjoint(&k4, 2).unwrap(), 2);
        assert_eq!(doc.result, ResultKind::Trees);
        doc.recheck(&k4, None).unwrap();
        let bad = CertificateDocument::from_solution(&solve_color_disjoint(&k4, 3).unwrap(), 3);
        assert_eq!(bad.result, ResultKind::Violation);
        bad.recheck(&k4, None).unwrap();

        let mut tampered = doc.clone();
        tampered.trees.as_mut().unwrap()[1] = tampered.trees.as_ref().unwrap()[0].clone();
        assert!(tampered.recheck(&k4, None).is_err());
        let mut tampered = bad;
        tampered.partition.as_mut().unwrap().achieved += 1;
        assert!(tampered.recheck(&k4, None).is_err());
    }

    #[test]
    fn shape_is_enforced() {
        let doc = CertificateDocument::none(2, Disjointness::ColorDisjoint, 15);
        let text = doc.to_json();
        assert!(text.contains("\"wall_ms\": null"));
        assert_eq!(CertificateDocument::parse(&text).unwrap(), doc);
        let wrong = text.replace("\"none\"", "\"trees\"");
        assert!(CertificateDocument::parse(&wrong).is_err());
        assert!(CertificateDocument::parse("{").is_err());
    }

    fn arb_doc() -> impl Strategy<Value = CertificateDocument> {
        let trees = prop::collection::vec(prop::collection::vec(0usize..40, 0..6), 1..4);
        let partition = (prop::collection::vec(0usize..4, 1..7), 0usize..20, 0usize..20).prop_map(|(a, r, h)| {
            PartitionDocument {
                assignment: a,
                required: r,
                achieved: h,
                deficiency: r as i64 - h as i64,
            }
        });
        let stats = (0usize..9, 0usize..50, 0u64..1000, prop::option::of(0u64..10_000)).prop_map(|(r, m, p, w)| {
            DocumentStats {
                rounds: r,
                moves: m,
                partitions_scanned: p,
                wall_ms: w,
            }
        });
        let mode = prop_oneof![Just(Disjointness::ColorDisjoint), Just(Disjointness::EdgeDisjoint)];
        (0u8..5, 1usize..5, mode, trees, partition, stats).prop_map(|(kind, t, mode, trees, partition, stats)| {
            let result = [
                ResultKind::Trees,
                ResultKind::Violation,
                ResultKind::Violation,
                ResultKind::ProvenAbsent,
                ResultKind::None,
            ][kind as usize];
            let split = SplitPartitionDocument {
                assignments: vec![partition.assignment.clone(); t],
                required: partition.required,
                achieved: partition.achieved,
                deficiency: partition.deficiency,
            };
            CertificateDocument {
                result,
                t,
                mode,
                trees: (kind == 0).then_some(trees),
                partition: (kind == 1).then_some(partition),
                partitions: (kind == 2).then_some(split),
                stats,
            }
        })
    }

    proptest! {
        #[test]
        fn documents_round_trip(doc in arb_doc()) {
            let text = doc.to_json();
            let back = CertificateDocument::parse(&text).unwrap();
            prop_assert_eq!(back.to_json(), text);
            prop_assert_eq!(back, doc);
        }
    }
}
