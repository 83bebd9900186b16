use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::path::PathBuf;

use super::graph_file::{serialize_graph, LabeledGraph};
use crate::graph::ColoredGraph;

pub const DUMP_DIR_VAR: &str = "RAINBOW_DUMP_DIR";

/// `$RAINBOW_DUMP_DIR`, or the system temporary directory.
pub fn dump_dir() -> PathBuf {
    std::env::var_os(DUMP_DIR_VAR).map_or_else(std::env::temp_dir, PathBuf::from)
}

/// Writes the instance in graph-file form under a `# failed-step:` header.
/// The file name is derived from the contents, so repeated failures on the
/// same instance overwrite one file.
pub fn write_dump(step: &str, g: &ColoredGraph) -> std::io::Result<PathBuf> {
    let step = step.replace('\n', " ");
    let text = format!("# failed-step: {step}\n{}", serialize_graph(&LabeledGraph::with_numeric_labels(g.clone())));
    let mut h = DefaultHasher::new();
    text.hash(&mut h);
    let dir = dump_dir();
    std::fs::create_dir_all(&dir)?;
    let path = dir.join(format!("rainbow-dump-{:016x}.ecg", h.finish()));
    std::fs::write(&path, text)?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_graph;

    #[test]
    fn dump_parses_back() {
        let g = ColoredGraph::rainbow_complete(4);
        let path = write_dump("some step", &g).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("# failed-step: some step\necg 4 6 6\n"));
        assert_eq!(parse_graph(&text).unwrap().graph, g);
        std::fs::remove_file(path).unwrap();
    }
}
