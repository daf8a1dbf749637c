//! Shape projection of structure files and shape-multiplicity tables.
//!
//! Input lines are arc lists, bracket strings or canonical shape words.
//! Blank lines and lines starting with `#` or `>` are skipped.

use std::collections::BTreeMap;
use std::io::{self, Write};

use num_bigint::BigInt;
use rnashapes::counting::IntPolynomial;
use rnashapes::{parse_structure, project_to_shape, DiagramError};

/// Projection of one input line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projected {
    /// 1-based line number.
    pub line: usize,
    pub genus: usize,
    /// Canonical word or `EMPTY`.
    pub word: String,
    pub arcs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineError {
    pub line: usize,
    pub error: DiagramError,
}

fn is_skipped(line: &str) -> bool {
    line.is_empty() || line.starts_with('#') || line.starts_with('>')
}

pub fn project_line(number: usize, line: &str) -> Option<Result<Projected, LineError>> {
    let line = line.trim();
    if is_skipped(line) {
        return None;
    }
    Some(match parse_structure(line) {
        Ok(d) => {
            let p = project_to_shape(&d);
            Ok(Projected { line: number, genus: p.genus(), word: p.word(), arcs: p.pure_arc_count() })
        }
        Err(error) => Err(LineError { line: number, error }),
    })
}

/// Projects every structure line of `text`.
pub fn project_text(text: &str) -> Vec<Result<Projected, LineError>> {
    text.lines().enumerate().filter_map(|(i, l)| project_line(i + 1, l)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeTally {
    pub genus: usize,
    pub arcs: usize,
    pub count: u64,
}

/// Multiplicities of shapes in a set of structures.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Corpus {
    pub shapes: BTreeMap<String, ShapeTally>,
    /// `(genus, arcs) -> structures`.
    pub by_arcs: BTreeMap<(usize, usize), u64>,
    pub by_genus: BTreeMap<usize, u64>,
    pub structures: u64,
}

impl Corpus {
    pub fn add(&mut self, p: &Projected) {
        let e = self
            .shapes
            .entry(p.word.clone())
            .or_insert(ShapeTally { genus: p.genus, arcs: p.arcs, count: 0 });
        e.count += 1;
        *self.by_arcs.entry((p.genus, p.arcs)).or_default() += 1;
        *self.by_genus.entry(p.genus).or_default() += 1;
        self.structures += 1;
    }

    /// Aggregates the parseable lines of `text` and returns the failures.
    pub fn from_text(text: &str) -> (Self, Vec<LineError>) {
        let mut corpus = Corpus::default();
        let mut errors = Vec::new();
        for r in project_text(text) {
            match r {
                Ok(p) => corpus.add(&p),
                Err(e) => errors.push(e),
            }
        }
        (corpus, errors)
    }

    /// `Σ_n (structures of genus g whose shape has n arcs) z^n`.
    pub fn polynomial(&self, genus: usize) -> IntPolynomial {
        IntPolynomial::from_coefficients(
            self.by_arcs
                .iter()
                .filter(|((g, _), _)| *g == genus)
                .map(|(&(_, n), &c)| (n, BigInt::from(c))),
        )
    }

    /// Report with four CSV sections, each introduced by a `#` line:
    /// `shapes` (word,genus,arcs,count), `multiplicities` (genus,arcs,count),
    /// `polynomials` (genus,polynomial) and `totals` (genus,count).
    pub fn write_report<W: Write + ?Sized>(&self, out: &mut W) -> io::Result<()> {
        writeln!(out, "# shapes")?;
        writeln!(out, "word,genus,arcs,count")?;
        for (w, t) in &self.shapes {
            writeln!(out, "{w},{},{},{}", t.genus, t.arcs, t.count)?;
        }
        writeln!(out, "# multiplicities")?;
        writeln!(out, "genus,arcs,count")?;
        for ((g, n), c) in &self.by_arcs {
            writeln!(out, "{g},{n},{c}")?;
        }
        writeln!(out, "# polynomials")?;
        writeln!(out, "genus,polynomial")?;
        for &g in self.by_genus.keys() {
            writeln!(out, "{g},{}", self.polynomial(g))?;
        }
        writeln!(out, "# totals")?;
        writeln!(out, "genus,count")?;
        for (g, c) in &self.by_genus {
            writeln!(out, "{g},{c}")?;
        }
        Ok(())
    }
}

/// Reads the `multiplicities` section back from a report.
pub fn parse_multiplicities(report: &str) -> BTreeMap<(usize, usize), u64> {
    let mut out = BTreeMap::new();
    let mut inside = false;
    for line in report.lines() {
        if let Some(section) = line.strip_prefix("# ") {
            inside = section == "multiplicities";
            continue;
        }
        if !inside || line.starts_with("genus,") {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if let [g, n, c] = f[..] {
            if let (Ok(g), Ok(n), Ok(c)) = (g.parse(), n.parse(), c.parse()) {
                out.insert((g, n), c);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projects_each_format() {
        let r = project_text("# comment\n4: 1,3 2,4\n\n((..))\n([)]\nABAB\n>header\n((\n");
        let ok: Vec<_> = r.iter().filter_map(|x| x.as_ref().ok()).map(|p| (p.line, p.genus, p.word.as_str(), p.arcs)).collect();
        assert_eq!(ok, vec![(2, 1, "ABAB", 2), (4, 0, "EMPTY", 0), (5, 1, "ABAB", 2), (6, 1, "ABAB", 2)]);
        let bad: Vec<_> = r.iter().filter_map(|x| x.as_ref().err()).map(|e| e.line).collect();
        assert_eq!(bad, vec![8]);
    }

    #[test]
    fn report_round_trip() {
        let (c, errors) = Corpus::from_text("ABAB\nABAB\n4: 1,3 2,4\n(.)\n");
        assert!(errors.is_empty());
        assert_eq!(c.structures, 4);
        assert_eq!(c.shapes["ABAB"].count, 3);
        assert_eq!(c.polynomial(1).to_string(), "3*z^2");
        let mut buf = Vec::new();
        c.write_report(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("ABAB,1,2,3\n"));
        assert!(text.contains("# totals\ngenus,count\n0,1\n1,3\n"));
        let m = parse_multiplicities(&text);
        assert_eq!(m, BTreeMap::from([((0, 0), 1), ((1, 2), 3)]));
    }

    #[test]
    fn empty_input() {
        let (c, errors) = Corpus::from_text("");
        assert!(errors.is_empty());
        let mut buf = Vec::new();
        c.write_report(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "# shapes\nword,genus,arcs,count\n# multiplicities\ngenus,arcs,count\n# polynomials\ngenus,polynomial\n# totals\ngenus,count\n"
        );
    }
}
