//! Parsing the text format, round-tripping it, and emitting the JSON
//! analysis report.
//!
//! ```bash
//! cargo run -p plcrn --example parse_and_report
//! ```

use plcrn::parse::parse_network;
use plcrn::report::Report;
use plcrn::steady::{existence_verdict, SolverConfig};

const INPUT: &str = "\
# A reversible pair feeding an open sink.
species A B
reaction R1: A <=> B ; k = 2, 6
reaction R2: B -> 0 ; k = 1
reaction R3: 0 -> A ; k = 3
";

fn main() {
    let parsed = parse_network(INPUT).expect("example input parses");
    for warning in &parsed.warnings {
        eprintln!("warning: {warning}");
    }

    println!("== round trip ==");
    let serialized = parsed.serialize();
    print!("{serialized}");
    let reparsed = parse_network(&serialized).unwrap();
    assert_eq!(reparsed.system, parsed.system);
    println!("round trip preserved the system structurally");

    println!("\n== JSON report ==");
    let verdict = existence_verdict(&parsed.system, &SolverConfig::default());
    let report = Report::full(&parsed, &verdict);
    println!("{}", report.to_json());
}
