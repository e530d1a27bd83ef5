use std::path::PathBuf;

use transcol::format::{
    parse_bipartite, parse_digraph, parse_matrix, write_bipartite, write_digraph, write_matrix,
};

/// Content lines with comments dropped and whitespace collapsed.
fn normalise(text: &str) -> Vec<String> {
    text.lines()
        .map(|l| l.split('#').next().unwrap().split_whitespace().collect::<Vec<_>>().join(" "))
        .filter(|l| !l.is_empty())
        .collect()
}

#[test]
fn every_data_file_round_trips() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data");
    let mut seen = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let lines = normalise(&text);
        let written = match lines[0].split(' ').next().unwrap() {
            "digraph" => write_digraph(&parse_digraph(&text).unwrap()),
            "matrix" => write_matrix(&parse_matrix(&text).unwrap()),
            "bipartite" => write_bipartite(&parse_bipartite(&text).unwrap()),
            other => panic!("{}: unknown header {other}", path.display()),
        };
        assert_eq!(normalise(&written), lines, "{}", path.display());
        seen += 1;
    }
    assert!(seen >= 10);
}
