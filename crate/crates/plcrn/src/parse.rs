//! Line-oriented text format for kinetic systems.
//!
//! ```text
//! # comments run to end of line
//! species X Y
//! reaction R1: 2 X -> X ; k = 1
//! reaction R2: X + Y <=> 2 Y ; k = 0.5, 2
//! orders R1: X = 2
//! orders R2: X = 1/3, Y = 2/3
//! ```
//!
//! Statements:
//! - `species <name>+` declares species; order of declaration is the
//!   species index order.
//! - `reaction <label>: <complex> -> <complex> ; k = <rate>` declares an
//!   irreversible reaction. The reversible arrow `<=>` takes two rate
//!   constants `k = <forward>, <backward>` and expands to two reactions
//!   labelled `<label>` and `<label>_rev`.
//! - `orders <label>: <species> = <rational>(, <species> = <rational>)*`
//!   sets the kinetic order row of one reaction; species not mentioned get
//!   order zero. Reactions without an orders statement default to mass
//!   action (orders from reactant stoichiometry).
//!
//! Complexes are `0` (empty) or `+`-separated terms `[coeff] name` with a
//! nonnegative rational coefficient (`2 X1`, `2X1`, `1/2 X`, `0.5X`);
//! an omitted coefficient means one. Rates are positive decimal literals,
//! scientific notation allowed. Kinetic orders are rationals `p`, `p/q`,
//! or terminating decimals, sign allowed.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use thiserror::Error;

use crate::kinetics::KineticSystem;
use crate::linalg::RatMatrix;
use crate::network::{Complex, NetworkBuilder};
use crate::rat::{format_rat, parse_rat, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("duplicate reaction label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown species `{0}`")]
    UnknownSpecies(String),
    #[error("rate constants must be strictly positive")]
    NonPositiveRate,
}

/// Parse failure with a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.kind)
    }
}

/// A parsed kinetic system with its reaction labels and any non-fatal
/// warnings (currently: reactant-determinedness violations).
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedSystem {
    pub system: KineticSystem,
    pub labels: Vec<String>,
    pub warnings: Vec<String>,
}

impl ParsedSystem {
    /// Wraps an in-memory system with default labels R1..Rr.
    pub fn from_system(system: KineticSystem) -> Self {
        let labels = (1..=system.network().num_reactions())
            .map(|i| format!("R{i}"))
            .collect();
        ParsedSystem {
            system,
            labels,
            warnings: Vec::new(),
        }
    }

    pub fn serialize(&self) -> String {
        serialize_network(&self.system, &self.labels)
    }
}

struct LineCursor<'a> {
    line_no: usize,
    text: &'a str,
    pos: usize,
}

impl<'a> LineCursor<'a> {
    fn new(line_no: usize, text: &'a str) -> Self {
        LineCursor {
            line_no,
            text,
            pos: 0,
        }
    }

    fn col(&self) -> usize {
        self.text[..self.pos].chars().count() + 1
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line_no,
            col: self.col(),
            kind,
        }
    }

    fn syntax(&self, msg: impl Into<String>) -> ParseError {
        self.error(ParseErrorKind::Syntax(msg.into()))
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start_matches([' ', '\t']);
        self.pos = self.text.len() - trimmed.len();
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.text.len()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.syntax(format!("expected `{token}`")))
        }
    }

    /// Identifier: letter or underscore, then letters, digits, underscores.
    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let rest = self.rest();
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return None,
        }
        let end = chars
            .find(|&(_, c)| !(c.is_ascii_alphanumeric() || c == '_'))
            .map_or(rest.len(), |(i, _)| i);
        self.pos += end;
        Some(rest[..end].to_string())
    }

    /// Unsigned rational token: digits, optionally `/digits` or `.digits`.
    fn unsigned_rational(&mut self) -> Option<Rat> {
        self.skip_ws();
        let rest = self.rest();
        let digits_end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if digits_end == 0 {
            return None;
        }
        let mut end = digits_end;
        let tail = &rest[digits_end..];
        if let Some(stripped) = tail.strip_prefix(['/', '.']) {
            let frac_end = stripped
                .find(|c: char| !c.is_ascii_digit())
                .unwrap_or(stripped.len());
            if frac_end > 0 {
                end = digits_end + 1 + frac_end;
            }
        }
        let parsed = parse_rat(&rest[..end])?;
        self.pos += end;
        Some(parsed)
    }

    /// Signed rational for kinetic orders.
    fn signed_rational(&mut self) -> Option<Rat> {
        self.skip_ws();
        let negative = self.eat("-");
        if !negative {
            let _ = self.eat("+");
        }
        let value = self.unsigned_rational()?;
        Some(if negative { -value } else { value })
    }

    /// Positive float literal for rate constants; scientific notation
    /// allowed.
    fn float(&mut self) -> Result<f64, ParseError> {
        self.skip_ws();
        let rest = self.rest();
        let mut end = 0;
        let bytes = rest.as_bytes();
        let take_digits = |end: &mut usize| {
            let start = *end;
            while *end < bytes.len() && bytes[*end].is_ascii_digit() {
                *end += 1;
            }
            *end > start
        };
        if end < bytes.len() && (bytes[end] == b'+' || bytes[end] == b'-') {
            end += 1;
        }
        let had_int = take_digits(&mut end);
        let mut had_frac = false;
        if end < bytes.len() && bytes[end] == b'.' {
            end += 1;
            had_frac = take_digits(&mut end);
        }
        if !had_int && !had_frac {
            return Err(self.syntax("expected a number"));
        }
        if end < bytes.len() && (bytes[end] == b'e' || bytes[end] == b'E') {
            let mut exp_end = end + 1;
            if exp_end < bytes.len() && (bytes[exp_end] == b'+' || bytes[exp_end] == b'-') {
                exp_end += 1;
            }
            if take_digits(&mut exp_end) {
                end = exp_end;
            }
        }
        let value: f64 = rest[..end]
            .parse()
            .map_err(|_| self.syntax("expected a number"))?;
        if !(value > 0.0 && value.is_finite()) {
            return Err(self.error(ParseErrorKind::NonPositiveRate));
        }
        self.pos += end;
        Ok(value)
    }
}

struct RawReaction {
    label: String,
    reactant: Complex,
    product: Complex,
    rate: f64,
    line: usize,
    col: usize,
}

/// Parses the text format into a validated kinetic system.
///
/// Species must be declared before use, `orders` statements must follow
/// the reaction they reference, and reactions default to mass action
/// kinetics. Reactant-determinedness violations are reported as warnings,
/// not errors; they only become fatal when a kinetic-column operation is
/// requested.
pub fn parse_network(text: &str) -> Result<ParsedSystem, ParseError> {
    let mut builder = NetworkBuilder::new();
    let mut species_names: Vec<String> = Vec::new();
    let mut raw_reactions: Vec<RawReaction> = Vec::new();
    let mut orders_by_label: BTreeMap<String, Vec<(usize, Rat)>> = BTreeMap::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        let mut cur = LineCursor::new(line_no, content);
        if cur.at_end() {
            continue;
        }
        let keyword_col = cur.col();
        let Some(keyword) = cur.ident() else {
            return Err(cur.syntax("expected `species`, `reaction`, or `orders`"));
        };
        match keyword.as_str() {
            "species" => {
                let mut any = false;
                while !cur.at_end() {
                    let col = cur.col();
                    let Some(name) = cur.ident() else {
                        return Err(cur.syntax("expected a species name"));
                    };
                    if species_names.contains(&name) {
                        return Err(ParseError {
                            line: line_no,
                            col,
                            kind: ParseErrorKind::Syntax(format!(
                                "duplicate species name `{name}`"
                            )),
                        });
                    }
                    builder.add_species(&name).expect("uniqueness checked");
                    species_names.push(name);
                    any = true;
                }
                if !any {
                    return Err(cur.syntax("expected at least one species name"));
                }
            }
            "reaction" => {
                let label_col = cur.col();
                let Some(label) = cur.ident() else {
                    return Err(cur.syntax("expected a reaction label"));
                };
                cur.expect(":")?;
                let statement_col = cur.col();
                let reactant = parse_complex(&mut cur, &species_names)?;
                let reversible = if cur.eat("<=>") {
                    true
                } else if cur.eat("->") {
                    false
                } else {
                    return Err(cur.syntax("expected `->` or `<=>`"));
                };
                let product = parse_complex(&mut cur, &species_names)?;
                cur.expect(";")?;
                cur.expect("k")?;
                cur.expect("=")?;
                let forward = cur.float()?;
                let backward = if cur.eat(",") {
                    Some(cur.float()?)
                } else {
                    None
                };
                if !cur.at_end() {
                    return Err(cur.syntax("unexpected trailing input"));
                }
                if reactant == product {
                    return Err(ParseError {
                        line: line_no,
                        col: statement_col,
                        kind: ParseErrorKind::Syntax(
                            "reactant and product complexes are identical".into(),
                        ),
                    });
                }
                let mut push = |label: String, reactant: Complex, product: Complex, rate: f64|
                 -> Result<(), ParseError> {
                    if raw_reactions.iter().any(|r| r.label == label) {
                        return Err(ParseError {
                            line: line_no,
                            col: label_col,
                            kind: ParseErrorKind::DuplicateLabel(label),
                        });
                    }
                    raw_reactions.push(RawReaction {
                        label,
                        reactant,
                        product,
                        rate,
                        line: line_no,
                        col: statement_col,
                    });
                    Ok(())
                };
                match (reversible, backward) {
                    (false, None) => push(label, reactant, product, forward)?,
                    (true, Some(backward)) => {
                        push(
                            label.clone(),
                            reactant.clone(),
                            product.clone(),
                            forward,
                        )?;
                        push(format!("{label}_rev"), product, reactant, backward)?;
                    }
                    (false, Some(_)) => {
                        return Err(cur.syntax("`->` takes a single rate constant"));
                    }
                    (true, None) => {
                        return Err(cur.syntax(
                            "`<=>` needs two rate constants: `k = <forward>, <backward>`",
                        ));
                    }
                }
            }
            "orders" => {
                let label_col = cur.col();
                let Some(label) = cur.ident() else {
                    return Err(cur.syntax("expected a reaction label"));
                };
                if !raw_reactions.iter().any(|r| r.label == label) {
                    return Err(ParseError {
                        line: line_no,
                        col: label_col,
                        kind: ParseErrorKind::Syntax(format!(
                            "unknown reaction label `{label}`"
                        )),
                    });
                }
                if orders_by_label.contains_key(&label) {
                    return Err(ParseError {
                        line: line_no,
                        col: label_col,
                        kind: ParseErrorKind::Syntax(format!(
                            "kinetic orders already given for `{label}`"
                        )),
                    });
                }
                cur.expect(":")?;
                let mut row: Vec<(usize, Rat)> = Vec::new();
                loop {
                    let name_col = cur.col();
                    let Some(name) = cur.ident() else {
                        return Err(cur.syntax("expected a species name"));
                    };
                    let Some(species) = species_names.iter().position(|s| s == &name) else {
                        return Err(ParseError {
                            line: line_no,
                            col: name_col,
                            kind: ParseErrorKind::UnknownSpecies(name),
                        });
                    };
                    cur.expect("=")?;
                    let Some(value) = cur.signed_rational() else {
                        return Err(cur.syntax("expected a rational kinetic order"));
                    };
                    row.push((species, value));
                    if !cur.eat(",") {
                        break;
                    }
                }
                if !cur.at_end() {
                    return Err(cur.syntax("unexpected trailing input"));
                }
                orders_by_label.insert(label, row);
            }
            other => {
                return Err(ParseError {
                    line: line_no,
                    col: keyword_col,
                    kind: ParseErrorKind::Syntax(format!(
                        "unknown statement `{other}`; expected `species`, `reaction`, or `orders`"
                    )),
                });
            }
        }
    }

    if raw_reactions.is_empty() {
        return Err(ParseError {
            line: text.lines().count().max(1),
            col: 1,
            kind: ParseErrorKind::Syntax("the file declares no reactions".into()),
        });
    }

    let mut labels = Vec::with_capacity(raw_reactions.len());
    let mut rates = Vec::with_capacity(raw_reactions.len());
    for raw in &raw_reactions {
        builder
            .add_reaction(raw.reactant.clone(), raw.product.clone())
            .map_err(|_| ParseError {
                line: raw.line,
                col: raw.col,
                kind: ParseErrorKind::Syntax(
                    "reactant and product complexes are identical".into(),
                ),
            })?;
        labels.push(raw.label.clone());
        rates.push(raw.rate);
    }
    let network = builder.build().expect("at least one reaction was added");

    let m = network.num_species();
    let mass_action = crate::kinetics::mass_action_orders(&network);
    let mut orders = RatMatrix::zeros(raw_reactions.len(), m);
    for (j, raw) in raw_reactions.iter().enumerate() {
        match orders_by_label.get(&raw.label) {
            Some(row) => {
                for (species, value) in row {
                    orders[(j, *species)] = value.clone();
                }
            }
            None => {
                for i in 0..m {
                    orders[(j, i)] = mass_action[(j, i)].clone();
                }
            }
        }
    }

    let system = KineticSystem::new(network, orders, rates)
        .expect("rates and dimensions validated during parsing");
    let warnings = system
        .plrdk_violations()
        .into_iter()
        .map(|(i, j)| {
            format!(
                "reactions {} and {} share a reactant complex but differ in kinetic orders; \
                 kinetics are not reactant-determined",
                labels[i], labels[j]
            )
        })
        .collect();
    Ok(ParsedSystem {
        system,
        labels,
        warnings,
    })
}

fn parse_complex(cur: &mut LineCursor, species: &[String]) -> Result<Complex, ParseError> {
    cur.skip_ws();
    // A bare `0` is the empty complex (only when not a coefficient).
    if cur.rest().starts_with('0') {
        let after = cur.rest()[1..].trim_start_matches([' ', '\t']);
        let next_is_term = after
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.' || c == '/');
        if !next_is_term {
            cur.pos += 1;
            return Ok(Complex::empty());
        }
    }
    let mut terms: Vec<(usize, Rat)> = Vec::new();
    loop {
        let coeff = cur.unsigned_rational().unwrap_or_else(Rat::one);
        let name_col = cur.col();
        let Some(name) = cur.ident() else {
            return Err(cur.syntax("expected a species name"));
        };
        let Some(index) = species.iter().position(|s| s == &name) else {
            return Err(ParseError {
                line: cur.line_no,
                col: name_col,
                kind: ParseErrorKind::UnknownSpecies(name),
            });
        };
        terms.push((index, coeff));
        if !cur.eat("+") {
            break;
        }
    }
    Complex::from_terms(&terms).map_err(|_| cur.syntax("invalid complex"))
}

/// Serializes a system to the text format. Parsing the result reproduces
/// the system structurally: species order, reaction order, exact kinetic
/// orders, and bit-identical rate constants.
pub fn serialize_network(system: &KineticSystem, labels: &[String]) -> String {
    let network = system.network();
    assert_eq!(
        labels.len(),
        network.num_reactions(),
        "one label per reaction"
    );
    let mut out = String::new();
    let names: Vec<&str> = network.species().iter().map(|s| s.name.as_str()).collect();
    out.push_str(&format!("species {}\n", names.join(" ")));
    let mass_action = crate::kinetics::mass_action_orders(network);
    for (j, reaction) in network.reactions().iter().enumerate() {
        let reactant = network.complexes()[reaction.reactant].display(network.species());
        let product = network.complexes()[reaction.product].display(network.species());
        out.push_str(&format!(
            "reaction {}: {} -> {} ; k = {}\n",
            labels[j], reactant, product, system.rates()[j]
        ));
        let row_is_mass_action = (0..network.num_species())
            .all(|i| system.kinetic_orders()[(j, i)] == mass_action[(j, i)]);
        if !row_is_mass_action {
            let mut pairs: Vec<String> = (0..network.num_species())
                .filter(|&i| !num_traits::Zero::is_zero(&system.kinetic_orders()[(j, i)]))
                .map(|i| {
                    format!(
                        "{} = {}",
                        network.species()[i].name,
                        format_rat(&system.kinetic_orders()[(j, i)])
                    )
                })
                .collect();
            if pairs.is_empty() {
                // All-zero row: pin one explicit zero so the row is not
                // mistaken for a mass action default.
                pairs.push(format!("{} = 0", network.species()[0].name));
            }
            out.push_str(&format!("orders {}: {}\n", labels[j], pairs.join(", ")));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};
    use crate::testing;
    use proptest::prelude::*;

    const TOY: &str = "\
# toy system with one fractional-order reaction
species X Y
reaction R1: 2 X -> X ; k = 1
reaction R2: 2 Y -> X + 2 Y ; k = 64
reaction R3: X + Y -> X ; k = 1
reaction R4: Y -> 2 Y ; k = 2
orders R3: X = 1/3, Y = 2/3
";

    #[test]
    fn parses_two_species_mass_action() {
        let text = "species X Y\nreaction R1: X -> Y ; k = 2\nreaction R2: Y -> X ; k = 6";
        let parsed = parse_network(text).unwrap();
        assert_eq!(parsed.labels, vec!["R1", "R2"]);
        assert_eq!(parsed.system.network().num_species(), 2);
        assert_eq!(parsed.system.network().num_reactions(), 2);
        assert_eq!(parsed.system.rates(), &[2.0, 6.0]);
        assert_eq!(parsed.system, testing::xy_reversible(2.0, 6.0));
        assert!(parsed.warnings.is_empty());
    }

    #[test]
    fn parses_toy_fixture_with_fractional_orders() {
        let parsed = parse_network(TOY).unwrap();
        assert_eq!(parsed.system, testing::toy_system(1.0, 64.0, 1.0, 2.0));
        assert_eq!(parsed.system.kinetic_orders()[(2, 0)], rat(1, 3));
        assert_eq!(parsed.system.kinetic_orders()[(2, 1)], rat(2, 3));
    }

    #[test]
    fn rejects_identical_reactant_and_product() {
        let err = parse_network("species X\nreaction R1: X -> X ; k = 1").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));
    }

    #[test]
    fn reversible_arrow_expands_to_two_reactions() {
        let text = "species X Y\nreaction R1: X <=> Y ; k = 2, 6";
        let parsed = parse_network(text).unwrap();
        assert_eq!(parsed.labels, vec!["R1", "R1_rev"]);
        assert_eq!(parsed.system, testing::xy_reversible(2.0, 6.0));
    }

    #[test]
    fn reversible_arrow_requires_two_rates() {
        let err = parse_network("species X Y\nreaction R1: X <=> Y ; k = 2").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));
        let err = parse_network("species X Y\nreaction R1: X -> Y ; k = 2, 3").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));
    }

    #[test]
    fn duplicate_labels_are_rejected() {
        let text = "species X Y\nreaction R1: X -> Y ; k = 1\nreaction R1: Y -> X ; k = 1";
        let err = parse_network(text).unwrap_err();
        assert_eq!(err.line, 3);
        assert_eq!(err.kind, ParseErrorKind::DuplicateLabel("R1".into()));
    }

    #[test]
    fn unknown_species_is_reported_with_position() {
        let err = parse_network("species X\nreaction R1: X -> Z ; k = 1").unwrap_err();
        assert_eq!(err.line, 2);
        assert_eq!(err.col, 19);
        assert_eq!(err.kind, ParseErrorKind::UnknownSpecies("Z".into()));
    }

    #[test]
    fn nonpositive_rates_are_rejected() {
        let err = parse_network("species X Y\nreaction R1: X -> Y ; k = 0").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::NonPositiveRate);
        let err = parse_network("species X Y\nreaction R1: X -> Y ; k = -2").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::NonPositiveRate);
    }

    #[test]
    fn every_error_carries_line_and_column() {
        let cases = [
            "species",
            "species X X",
            "reaction : X -> Y ; k = 1",
            "species X Y\nreaction R1 X -> Y ; k = 1",
            "species X Y\nreaction R1: X => Y ; k = 1",
            "species X Y\nreaction R1: X -> Y k = 1",
            "species X Y\nreaction R1: X -> Y ; k 1",
            "species X Y\nreaction R1: X -> Y ; k = 1 extra",
            "species X Y\nreaction R1: X -> Y ; k = 1\norders R9: X = 1",
            "species X Y\nreaction R1: X -> Y ; k = 1\norders R1: X",
            "species X Y\nreaction R1: X -> Y ; k = 1\norders R1: Q = 1",
            "nonsense",
        ];
        for text in cases {
            let err = parse_network(text).unwrap_err();
            assert!(err.line >= 1, "{text}: {err}");
            assert!(err.col >= 1, "{text}: {err}");
        }
    }

    #[test]
    fn coefficient_syntax_variants() {
        let text = "species X Y\nreaction R1: 2X -> X + Y ; k = 1\nreaction R2: 1/2 X + 0.5 Y -> Y ; k = 1";
        let parsed = parse_network(text).unwrap();
        let net = parsed.system.network();
        let c0 = &net.complexes()[net.reactions()[0].reactant];
        assert_eq!(c0.coeff(0), rat_int(2));
        let c2 = &net.complexes()[net.reactions()[1].reactant];
        assert_eq!(c2.coeff(0), rat(1, 2));
        assert_eq!(c2.coeff(1), rat(1, 2));
    }

    #[test]
    fn empty_complex_allowed() {
        let text = "species X\nreaction R1: 0 -> X ; k = 1\nreaction R2: X -> 0 ; k = 2";
        let parsed = parse_network(text).unwrap();
        let net = parsed.system.network();
        assert!(net.complexes()[net.reactions()[0].reactant].is_empty());
    }

    #[test]
    fn plrdk_violation_is_a_warning_not_an_error() {
        let text = "\
species A B C
reaction R1: A -> B ; k = 1
reaction R2: A -> C ; k = 1
orders R2: A = 2
";
        let parsed = parse_network(text).unwrap();
        assert_eq!(parsed.warnings.len(), 1);
        assert!(parsed.warnings[0].contains("R1"));
        assert!(!parsed.system.is_plrdk());
    }

    #[test]
    fn mass_action_default_is_reactant_determined() {
        let text = "species X Y Z\nreaction R1: X + Y -> Z ; k = 1\nreaction R2: X + Y -> 2 Z ; k = 2";
        let parsed = parse_network(text).unwrap();
        assert!(parsed.system.is_plrdk());
        assert!(parsed.warnings.is_empty());
    }

    #[test]
    fn round_trips_fixtures() {
        for sys in testing::all_fixtures() {
            let parsed = ParsedSystem::from_system(sys);
            let text = parsed.serialize();
            let reparsed = parse_network(&text).unwrap();
            assert_eq!(reparsed.system, parsed.system, "text:\n{text}");
            assert_eq!(reparsed.labels, parsed.labels);
        }
    }

    #[test]
    fn round_trips_all_zero_order_row() {
        let mut sys = testing::xy_reversible(1.0, 1.0);
        let zeros = RatMatrix::zeros(2, 2);
        sys = KineticSystem::new(sys.network().clone(), zeros, vec![1.0, 1.0]).unwrap();
        let parsed = ParsedSystem::from_system(sys);
        let reparsed = parse_network(&parsed.serialize()).unwrap();
        assert_eq!(reparsed.system, parsed.system);
    }

    prop_compose! {
        fn arb_rat()(num in -6i64..=6, den in 1i64..=4) -> crate::rat::Rat {
            rat(num, den)
        }
    }

    fn arb_system() -> impl Strategy<Value = KineticSystem> {
        (2usize..=4, 1usize..=5).prop_flat_map(|(m, r)| {
            let complexes = proptest::collection::vec(
                proptest::collection::vec(0i64..=2, m),
                2 * r,
            );
            let orders = proptest::collection::vec(
                proptest::collection::vec(arb_rat(), m),
                r,
            );
            let rates = proptest::collection::vec(1u32..=1000u32, r);
            (complexes, orders, rates).prop_filter_map(
                "valid network",
                move |(complexes, orders, rates)| {
                    let mut b = NetworkBuilder::new();
                    for i in 0..m {
                        b.add_species(&format!("S{i}")).unwrap();
                    }
                    for pair in complexes.chunks(2) {
                        let terms = |coeffs: &[i64]| {
                            Complex::from_terms(
                                &coeffs
                                    .iter()
                                    .enumerate()
                                    .map(|(s, &c)| (s, rat_int(c)))
                                    .collect::<Vec<_>>(),
                            )
                            .unwrap()
                        };
                        let _ = b.add_reaction(terms(&pair[0]), terms(&pair[1]));
                    }
                    let network = b.build().ok()?;
                    let r_actual = network.num_reactions();
                    let m = network.num_species();
                    let mut f = RatMatrix::zeros(r_actual, m);
                    for j in 0..r_actual {
                        for i in 0..m {
                            f[(j, i)] = orders[j % orders.len()][i].clone();
                        }
                    }
                    let rates: Vec<f64> = rates
                        .iter()
                        .cycle()
                        .take(r_actual)
                        .map(|&k| f64::from(k) / 16.0)
                        .collect();
                    KineticSystem::new(network, f, rates).ok()
                },
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn parse_serialize_identity(sys in arb_system()) {
            let parsed = ParsedSystem::from_system(sys);
            let text = parsed.serialize();
            let reparsed = parse_network(&text).unwrap();
            prop_assert_eq!(reparsed.system, parsed.system, "text:\n{}", text);
        }
    }
}
