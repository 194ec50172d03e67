//! The .bg files shipped in fixtures/ must match the fixture builders.

use chaindec::codec::{read_graph, write_graph};
use chaindec::fixtures;

fn check(name: &str, g: chaindec::BipartiteGraph) {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/");
    let text = std::fs::read_to_string(format!("{path}{name}.bg"))
        .unwrap_or_else(|e| panic!("missing fixture file {name}.bg: {e}"));
    assert_eq!(read_graph(&text).unwrap(), g, "{name}.bg diverges");
    assert_eq!(write_graph(&g).unwrap(), text, "{name}.bg is not canonical");
}

#[test]
fn shipped_fixture_files_are_canonical() {
    check("p7", fixtures::p7());
    check("two_k2", fixtures::two_k2());
    check("c6", fixtures::c6());
    check("g8", fixtures::g8());
}
