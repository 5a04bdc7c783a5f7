//! Group definition files and the builtin corpus.

use std::fmt::Write as _;
use std::sync::Arc;

use nilweight::{Limits, Perm, PermGroup};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupDefinition {
    pub name: String,
    pub degree: usize,
    /// Cycle notation, 1-based points.
    pub generators: Vec<String>,
    pub expected_order: Option<u64>,
    pub tags: Vec<String>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

/// Parses the `key: value` grammar and checks generators and the expected order.
pub fn parse_group_file(text: &str) -> Result<GroupDefinition, ParseError> {
    let mut name: Option<String> = None;
    let mut degree: Option<(usize, usize)> = None;
    let mut order: Option<(u64, usize)> = None;
    let mut gens: Vec<(String, usize, usize)> = Vec::new();
    let mut tags = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        last_line = ln;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        let Some(colon) = content.find(':') else {
            return Err(err(ln, indent + 1, "expected `key: value`"));
        };
        let key = content[..colon].trim();
        let after = &content[colon + 1..];
        let value = after.trim();
        let vcol = colon + 2 + (after.len() - after.trim_start().len());
        match key {
            "name" => {
                if name.is_some() {
                    return Err(err(ln, indent + 1, "duplicate `name`"));
                }
                if value.is_empty() || value.chars().any(char::is_whitespace) {
                    return Err(err(ln, vcol, "name must be a non-empty identifier without spaces"));
                }
                name = Some(value.to_string());
            }
            "degree" => {
                if degree.is_some() {
                    return Err(err(ln, indent + 1, "duplicate `degree`"));
                }
                match value.parse::<usize>() {
                    Ok(d) if d > 0 => degree = Some((d, ln)),
                    _ => return Err(err(ln, vcol, format!("degree must be a positive integer, got {value:?}"))),
                }
            }
            "order" => {
                if order.is_some() {
                    return Err(err(ln, indent + 1, "duplicate `order`"));
                }
                match value.parse::<u64>() {
                    Ok(o) if o > 0 => order = Some((o, ln)),
                    _ => return Err(err(ln, vcol, format!("order must be a positive integer, got {value:?}"))),
                }
            }
            "gen" => gens.push((value.to_string(), ln, vcol)),
            "tags" => tags.extend(value.split(',').map(str::trim).filter(|t| !t.is_empty()).map(String::from)),
            other => return Err(err(ln, indent + 1, format!("unknown key {other:?}"))),
        }
    }
    let name = name.ok_or_else(|| err(last_line.max(1), 1, "missing `name`"))?;
    let (degree, _) = degree.ok_or_else(|| err(last_line.max(1), 1, "missing `degree`"))?;
    let mut perms = Vec::with_capacity(gens.len());
    for (text, ln, col) in &gens {
        perms.push(parse_generator(degree, text).map_err(|(off, m)| err(*ln, col + off, m))?);
    }
    let def = GroupDefinition {
        name,
        degree,
        generators: gens.into_iter().map(|(t, _, _)| t).collect(),
        expected_order: order.map(|(o, _)| o),
        tags,
    };
    if let Some((expected, ln)) = order {
        let g = PermGroup::new(degree, perms).map_err(|e| err(ln, 1, e.to_string()))?;
        let got = g.order_big().to_string();
        if got != expected.to_string() {
            return Err(err(ln, 1, format!("expected order {expected}, computed {got}")));
        }
    }
    Ok(def)
}

/// Parses one generator; on error returns the offset of the offending cycle within `text`.
fn parse_generator(degree: usize, text: &str) -> Result<Perm, (usize, String)> {
    if let Some(bad) = text.find(|c: char| !(c.is_ascii_digit() || c.is_whitespace() || "(),".contains(c))) {
        return Err((bad, format!("unexpected character {:?}", text[bad..].chars().next().unwrap_or(' '))));
    }
    let mut start = 0;
    while let Some(open) = text[start..].find('(').map(|o| o + start) {
        let close = text[open..].find(')').map(|c| c + open).ok_or((open, "unclosed cycle".to_string()))?;
        Perm::parse_cycles(degree, &text[open..=close]).map_err(|e| (open, strip_kind(&e.to_string())))?;
        start = close + 1;
    }
    Perm::parse_cycles(degree, text).map_err(|e| (0, strip_kind(&e.to_string())))
}

fn strip_kind(msg: &str) -> String {
    msg.strip_prefix("malformed input: ").unwrap_or(msg).to_string()
}

impl GroupDefinition {
    fn new(name: &str, degree: usize, generators: &[&str], order: u64) -> GroupDefinition {
        GroupDefinition {
            name: name.into(),
            degree,
            generators: generators.iter().map(|s| s.to_string()).collect(),
            expected_order: Some(order),
            tags: Vec::new(),
        }
    }

    fn tagged(mut self, tags: &[&str]) -> GroupDefinition {
        self.tags = tags.iter().map(|s| s.to_string()).collect();
        self
    }

    /// The group-file form; re-parses to an equal definition.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "name: {}", self.name);
        let _ = writeln!(s, "degree: {}", self.degree);
        if let Some(o) = self.expected_order {
            let _ = writeln!(s, "order: {o}");
        }
        if !self.tags.is_empty() {
            let _ = writeln!(s, "tags: {}", self.tags.join(", "));
        }
        for g in &self.generators {
            let _ = writeln!(s, "gen: {g}");
        }
        s
    }

    pub fn build(&self, limits: Limits) -> nilweight::Result<Arc<PermGroup>> {
        let perms = self.generators.iter().map(|t| Perm::parse_cycles(self.degree, t)).collect::<nilweight::Result<Vec<_>>>()?;
        let g = PermGroup::named(&self.name, self.degree, perms, limits)?;
        if let Some(o) = self.expected_order {
            if g.order_big().to_string() != o.to_string() {
                return Err(nilweight::Error::Consistency(format!("{}: expected order {o}, computed {}", self.name, g.order_big())));
            }
        }
        Ok(g)
    }
}

fn cyclic(n: usize) -> GroupDefinition {
    let cycle: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let gen = format!("({})", cycle.join(","));
    GroupDefinition::new(&format!("C{n}"), n, &[&gen], n as u64).tagged(&["solvable", "abelian"])
}

/// Entries recorded but never computed, with the reason.
pub const SKIPPED: &[(&str, &str)] = &[("J4", "order 86775571046077562880 is far beyond enumeration; permanently skipped")];

pub fn builtin_corpus() -> Vec<GroupDefinition> {
    let mut out = vec![GroupDefinition::new("trivial", 1, &[], 1).tagged(&["solvable"])];
    out.extend((2..=12).map(cyclic));
    out.extend([
        GroupDefinition::new("S3", 3, &["(1,2)", "(1,2,3)"], 6).tagged(&["solvable"]),
        GroupDefinition::new("S4", 4, &["(1,2)", "(1,2,3,4)"], 24).tagged(&["solvable"]),
        GroupDefinition::new("A4", 4, &["(1,2,3)", "(1,2)(3,4)"], 12).tagged(&["solvable", "normal-hall"]),
        GroupDefinition::new("A5", 5, &["(1,2,3,4,5)", "(1,2,3)"], 60).tagged(&["simple"]),
        GroupDefinition::new("D8", 4, &["(1,2,3,4)", "(1,3)"], 8).tagged(&["solvable"]),
        GroupDefinition::new("Q8", 8, &["(1,2,3,4)(5,6,7,8)", "(1,5,3,7)(2,8,4,6)"], 8).tagged(&["solvable"]),
        GroupDefinition::new("D10", 5, &["(1,2,3,4,5)", "(2,5)(3,4)"], 10).tagged(&["solvable"]),
        GroupDefinition::new("D12", 6, &["(1,2,3,4,5,6)", "(2,6)(3,5)"], 12).tagged(&["solvable"]),
        GroupDefinition::new("V4", 4, &["(1,2)(3,4)", "(1,3)(2,4)"], 4).tagged(&["solvable", "abelian"]),
        GroupDefinition::new("C3:C4", 7, &["(1,2,3)", "(1,2)(4,5,6,7)"], 12).tagged(&["solvable"]),
        GroupDefinition::new("S3xS3", 6, &["(1,2)", "(1,2,3)", "(4,5)", "(4,5,6)"], 36).tagged(&["solvable"]),
        GroupDefinition::new("A4xC3", 7, &["(1,2,3)", "(1,2)(3,4)", "(5,6,7)"], 36).tagged(&["solvable"]),
        GroupDefinition::new("C3^2:C2", 6, &["(1,2,3)", "(4,5,6)", "(1,4)(2,5)(3,6)"], 18).tagged(&["solvable", "normal-hall"]),
        GroupDefinition::new("S4xC5", 9, &["(1,2)", "(1,2,3,4)", "(5,6,7,8,9)"], 120).tagged(&["solvable"]),
        GroupDefinition::new("C7:C3", 7, &["(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)"], 21).tagged(&["solvable", "frobenius"]),
        GroupDefinition::new("C5^2:V4", 10, &["(1,2,3,4,5)", "(6,7,8,9,10)", "(2,5)(3,4)", "(7,10)(8,9)"], 100)
            .tagged(&["solvable", "normal-hall"]),
        GroupDefinition::new("G216", 9, &nilweight::properties::order_216_generators(), 216).tagged(&["solvable"]),
    ]);
    out
}

pub fn builtin(name: &str) -> Option<GroupDefinition> {
    let all = builtin_corpus();
    all.iter()
        .find(|d| d.name == name)
        .or_else(|| all.iter().find(|d| d.name.eq_ignore_ascii_case(name)))
        .cloned()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_fixture() {
        let d = parse_group_file("name: S3\ndegree: 3\ngen: (1,2)\ngen: (1,2,3)\norder: 6").unwrap();
        assert_eq!(d.name, "S3");
        assert_eq!(d.degree, 3);
        assert_eq!(d.generators, vec!["(1,2)", "(1,2,3)"]);
        assert_eq!(d.expected_order, Some(6));
    }

    #[test]
    fn diagnostics() {
        let e = parse_group_file("name: X\ndegree: 3\ngen: (1,2,2)").unwrap_err();
        assert_eq!((e.line, e.column), (3, 6));
        assert!(e.message.contains("repeated point in cycle"), "{e}");

        let e = parse_group_file("name: X\ndegree: 3\ngen: (1,2)(3,4)").unwrap_err();
        assert_eq!((e.line, e.column), (3, 11));

        let e = parse_group_file("name: X\ndegree: 3\n# comment\ngen: (1,2)\norder: 5").unwrap_err();
        assert_eq!(e.line, 5);
        assert!(e.message.contains("expected order 5"));

        let e = parse_group_file("name: X\nsize: 3").unwrap_err();
        assert_eq!((e.line, e.column), (2, 1));
        assert!(parse_group_file("degree: 3").is_err());
        assert!(parse_group_file("name: X\ndegree: 0").is_err());
    }

    #[test]
    fn comments_and_whitespace() {
        let d = parse_group_file("# header\n  name: A5   # alternating\ndegree: 5\ngen: ( 1, 2, 3, 4, 5 )\ngen: (1,2,3)\norder: 60\n").unwrap();
        assert_eq!(d.expected_order, Some(60));
        assert_eq!(d.generators[0], "( 1, 2, 3, 4, 5 )");
    }

    #[test]
    fn builtins_round_trip_and_build() {
        let corpus = builtin_corpus();
        assert!(!corpus.is_empty());
        for d in &corpus {
            assert_eq!(parse_group_file(&d.to_text()).unwrap(), *d, "{}", d.name);
            let g = d.build(Limits::default()).unwrap();
            assert_eq!(Some(g.order()), d.expected_order);
        }
        assert_eq!(builtin("A5").unwrap().expected_order, Some(60));
        assert_eq!(builtin("C3^2:C2").unwrap().expected_order, Some(18));
        assert!(builtin("s4").is_some());
    }

    #[test]
    fn q8_is_quaternion() {
        let g = builtin("Q8").unwrap().build(Limits::default()).unwrap();
        let involutions = g.class_data().unwrap().classes.iter().filter(|c| c.element_order == 2).count();
        assert_eq!(involutions, 1);
        assert!(!g.structure_flags().is_nilpotent || g.class_data().unwrap().len() == 5);
    }
}
