//! Human and machine renderings of command output.
//!
//! Machine format (version 1), UTF-8, one record per line, fields separated by TAB:
//!
//! ```text
//! nilweight-report 1
//! command<TAB><subcommand>
//! block<TAB><kind>
//! <key><TAB><value>
//! row<TAB><cell><TAB><cell>...
//! end
//! status<TAB>ok|fail
//! ```
//!
//! Every block opens with `block` and closes with `end`. Keys inside a block
//! appear in a fixed order per block kind. Tabs and newlines inside values are
//! replaced by spaces.

use std::fmt::Write as _;

use nilweight::verify::VerificationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Block {
    pub kind: String,
    /// One-line summary for human output.
    pub headline: String,
    pub fields: Vec<(String, String)>,
    pub rows: Vec<Vec<String>>,
}

impl Block {
    pub fn new(kind: &str, headline: impl Into<String>) -> Block {
        Block { kind: kind.into(), headline: headline.into(), ..Default::default() }
    }

    pub fn field(mut self, key: &str, value: impl ToString) -> Block {
        self.fields.push((key.into(), value.to_string()));
        self
    }

    pub fn push_field(&mut self, key: &str, value: impl ToString) {
        self.fields.push((key.into(), value.to_string()));
    }

    pub fn row<I, S>(&mut self, cells: I)
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        self.rows.push(cells.into_iter().map(|c| c.to_string()).collect());
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub command: String,
    pub blocks: Vec<Block>,
    /// Some verdict failed or some property did not pass.
    pub failed: bool,
}

fn clean(s: &str) -> String {
    s.replace(['\t', '\n', '\r'], " ")
}

impl Output {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Machine => self.machine(),
            Format::Human => self.human(),
        }
    }

    fn machine(&self) -> String {
        let mut s = String::from("nilweight-report 1\n");
        let _ = writeln!(s, "command\t{}", clean(&self.command));
        for b in &self.blocks {
            let _ = writeln!(s, "block\t{}", clean(&b.kind));
            for (k, v) in &b.fields {
                let _ = writeln!(s, "{}\t{}", clean(k), clean(v));
            }
            for r in &b.rows {
                s.push_str("row");
                for c in r {
                    s.push('\t');
                    s.push_str(&clean(c));
                }
                s.push('\n');
            }
            s.push_str("end\n");
        }
        let _ = writeln!(s, "status\t{}", if self.failed { "fail" } else { "ok" });
        s
    }

    fn human(&self) -> String {
        let mut s = String::new();
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                s.push('\n');
            }
            if !b.headline.is_empty() {
                let _ = writeln!(s, "{}", b.headline);
            }
            for (k, v) in &b.fields {
                let _ = writeln!(s, "  {k}: {v}");
            }
            for r in &b.rows {
                let _ = writeln!(s, "  - {}", r.join(" | "));
            }
        }
        s
    }
}

fn verdict_text(r: &VerificationReport) -> String {
    let unmet = r.unmet();
    if unmet.is_empty() {
        r.verdict.to_string()
    } else {
        let list = unmet.iter().map(|h| format!("{h} unmet")).collect::<Vec<_>>().join(", ");
        format!("{} (hypothesis: {list})", r.verdict)
    }
}

pub fn verification_block(r: &VerificationReport) -> Block {
    let subject = r.subject.as_deref().map(|s| format!(" {s}")).unwrap_or_default();
    let headline = format!(
        "theorem {} on {} sigma={}{subject}: lhs {} rhs {} {}",
        r.theorem,
        r.group,
        r.sigma,
        r.lhs,
        r.rhs,
        verdict_text(r)
    );
    let mut b = Block::new("verification", headline)
        .field("theorem", &r.theorem)
        .field("group", &r.group)
        .field("sigma", r.sigma.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","));
    if let Some(s) = &r.subject {
        b.push_field("subject", s);
    }
    for h in &r.hypotheses {
        b.push_field("hypothesis", format!("{}={}", h.name, if h.met { "met" } else { "unmet" }));
    }
    b.push_field("lhs", r.lhs);
    b.push_field("rhs", r.rhs);
    b.push_field("verdict", r.verdict);
    for (k, v) in &r.notes {
        b.push_field("note", format!("{k}: {v}"));
    }
    for row in &r.rows {
        b.row([row.side.to_string(), row.count.to_string(), row.label.clone()]);
    }
    b
}
