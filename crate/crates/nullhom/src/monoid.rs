//! Finite monoids given by explicit multiplication tables.
//!
//! A [`FiniteMonoid`] is a validated table: constructing one checks the unit
//! laws and full associativity, so every value of the type is an actual
//! monoid. Raw, possibly-broken tables live in [`TableData`] until checked.

use crate::error::{Error, Result};
use std::fmt;

/// An unvalidated multiplication table, as read from a `.monoid` file or
/// assembled by hand. `table[a][b]` is the index of the product `a·b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableData {
    pub name: String,
    pub elements: Vec<String>,
    pub unit: usize,
    pub table: Vec<Vec<usize>>,
}

/// A reason a table fails to be a monoid, with a concrete witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableDefect {
    /// Table is not n×n or an entry is out of range.
    Malformed(String),
    /// `unit·a ≠ a` or `a·unit ≠ a`.
    UnitLaw { a: String },
    /// `(a·b)·c ≠ a·(b·c)`.
    Associativity { a: String, b: String, c: String },
}

impl fmt::Display for TableDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableDefect::Malformed(msg) => write!(f, "malformed table: {msg}"),
            TableDefect::UnitLaw { a } => write!(f, "unit law fails at element {a}"),
            TableDefect::Associativity { a, b, c } => {
                write!(f, "associativity fails on triple ({a}, {b}, {c})")
            }
        }
    }
}

impl TableData {
    /// Exhaustive monoid check: shape, index ranges, unit laws, and all n³
    /// associativity triples. Returns the first defect found, in a fixed
    /// scan order, so witnesses are deterministic.
    pub fn check(&self) -> std::result::Result<(), TableDefect> {
        let n = self.elements.len();
        if n == 0 {
            return Err(TableDefect::Malformed("no elements".into()));
        }
        if self.unit >= n {
            return Err(TableDefect::Malformed(format!(
                "unit index {} out of range 0..{n}",
                self.unit
            )));
        }
        if self.table.len() != n {
            return Err(TableDefect::Malformed(format!(
                "expected {n} rows, found {}",
                self.table.len()
            )));
        }
        for (i, row) in self.table.iter().enumerate() {
            if row.len() != n {
                return Err(TableDefect::Malformed(format!(
                    "row {} has {} entries, expected {n}",
                    self.elements[i],
                    row.len()
                )));
            }
            for &e in row {
                if e >= n {
                    return Err(TableDefect::Malformed(format!(
                        "entry {e} out of range 0..{n} in row {}",
                        self.elements[i]
                    )));
                }
            }
        }
        let u = self.unit;
        for a in 0..n {
            if self.table[u][a] != a || self.table[a][u] != a {
                return Err(TableDefect::UnitLaw {
                    a: self.elements[a].clone(),
                });
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]] {
                        return Err(TableDefect::Associativity {
                            a: self.elements[a].clone(),
                            b: self.elements[b].clone(),
                            c: self.elements[c].clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// True iff the table passes every monoid axiom.
    pub fn is_monoid(&self) -> bool {
        self.check().is_ok()
    }
}

/// A finite monoid with a designated unit; always satisfies the axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMonoid {
    name: String,
    elements: Vec<String>,
    unit: usize,
    table: Vec<usize>, // row-major n×n
}

impl FiniteMonoid {
    pub fn from_table(data: TableData) -> Result<Self> {
        data.check()
            .map_err(|d| Error::NotAMonoid(format!("{} — {d}", data.name)))?;
        let mut sorted = data.elements.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != data.elements.len() {
            return Err(Error::NotAMonoid(format!(
                "{} — duplicate element names",
                data.name
            )));
        }
        let n = data.elements.len();
        let mut table = Vec::with_capacity(n * n);
        for row in &data.table {
            table.extend_from_slice(row);
        }
        Ok(FiniteMonoid {
            name: data.name,
            elements: data.elements,
            unit: data.unit,
            table,
        })
    }

    /// The one-element monoid.
    pub fn trivial() -> Self {
        FiniteMonoid {
            name: "trivial".into(),
            elements: vec!["1".into()],
            unit: 0,
            table: vec![0],
        }
    }

    /// The cyclic group Z/n as a multiplication table, elements `1, g, g2, …`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let elements = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g{i}"),
            })
            .collect();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push((a + b) % n);
            }
        }
        FiniteMonoid {
            name: format!("z{n}"),
            elements,
            unit: 0,
            table,
        }
    }

    /// The r×c rectangular band with an adjoined unit: elements `1` and
    /// `xij` for 1 ≤ i ≤ r, 1 ≤ j ≤ c, multiplying by `xij·xkl = xil`.
    /// Every element is idempotent. `rectangular_band(2, 2)` is the
    /// five-element monoid whose classifying space is a 2-sphere.
    pub fn rectangular_band(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1);
        let mut elements = vec!["1".to_string()];
        for i in 1..=rows {
            for j in 1..=cols {
                elements.push(format!("x{i}{j}"));
            }
        }
        let n = elements.len();
        let idx = |i: usize, j: usize| 1 + (i - 1) * cols + (j - 1);
        let mut table = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                let p = if a == 0 {
                    b
                } else if b == 0 {
                    a
                } else {
                    let ai = (a - 1) / cols + 1;
                    let bj = (b - 1) % cols + 1;
                    idx(ai, bj)
                };
                table[a * n + b] = p;
            }
        }
        FiniteMonoid {
            name: format!("band{rows}x{cols}"),
            elements,
            unit: 0,
            table,
        }
    }

    /// Direct product of two table monoids, elements named `(a,b)`.
    pub fn direct_product(x: &FiniteMonoid, y: &FiniteMonoid) -> Self {
        let nx = x.len();
        let ny = y.len();
        let mut elements = Vec::with_capacity(nx * ny);
        for a in 0..nx {
            for b in 0..ny {
                elements.push(format!("({},{})", x.elements[a], y.elements[b]));
            }
        }
        let n = nx * ny;
        let mut table = vec![0usize; n * n];
        for a1 in 0..nx {
            for b1 in 0..ny {
                for a2 in 0..nx {
                    for b2 in 0..ny {
                        let p = x.product(a1, a2) * ny + y.product(b1, b2);
                        table[(a1 * ny + b1) * n + (a2 * ny + b2)] = p;
                    }
                }
            }
        }
        FiniteMonoid {
            name: format!("{}x{}", x.name, y.name),
            elements,
            unit: x.unit * ny + y.unit,
            table,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        self.table[a * self.elements.len() + b]
    }

    pub fn element_name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn element_index(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        0..self.elements.len()
    }

    /// Elements other than the unit, in table order.
    pub fn non_units(&self) -> impl Iterator<Item = usize> + '_ {
        let unit = self.unit;
        (0..self.elements.len()).filter(move |&i| i != unit)
    }

    /// All elements `e` with `e·e = e`. The unit is always among them.
    pub fn idempotents(&self) -> Vec<usize> {
        self.elements()
            .filter(|&e| self.product(e, e) == e)
            .collect()
    }

    /// Two-sided inverse of `a`, if any.
    pub fn inverse_of(&self, a: usize) -> Option<usize> {
        self.elements()
            .find(|&b| self.product(a, b) == self.unit && self.product(b, a) == self.unit)
    }

    /// True iff every element has a two-sided inverse.
    pub fn is_group(&self) -> bool {
        self.elements().all(|a| self.inverse_of(a).is_some())
    }

    pub fn to_table_data(&self) -> TableData {
        let n = self.len();
        TableData {
            name: self.name.clone(),
            elements: self.elements.clone(),
            unit: self.unit,
            table: (0..n)
                .map(|a| (0..n).map(|b| self.product(a, b)).collect())
                .collect(),
        }
    }
}

/// Parses the line-oriented multiplication-table format:
///
/// ```text
/// monoid <name>
/// elements: e1 e2 ... en
/// unit: <token>
/// row <token>: <token1> ... <tokenn>
/// ```
///
/// `#` starts a comment; blank lines are ignored. Every element needs a
/// `row` line; columns follow the order of the `elements` line.
pub fn parse_monoid_file(text: &str) -> Result<TableData> {
    let mut name: Option<String> = None;
    let mut elements: Option<Vec<String>> = None;
    let mut unit: Option<String> = None;
    let mut rows: Vec<(usize, String, Vec<String>)> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("monoid ") {
            name = Some(rest.trim().to_string());
        } else if let Some(rest) = line.strip_prefix("elements:") {
            elements = Some(rest.split_whitespace().map(str::to_string).collect());
        } else if let Some(rest) = line.strip_prefix("unit:") {
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() != 1 {
                return Err(Error::parse(lineno, "unit: expects exactly one token"));
            }
            unit = Some(toks[0].to_string());
        } else if let Some(rest) = line.strip_prefix("row ") {
            let (head, tail) = rest
                .split_once(':')
                .ok_or_else(|| Error::parse(lineno, "row line missing ':'"))?;
            rows.push((
                lineno,
                head.trim().to_string(),
                tail.split_whitespace().map(str::to_string).collect(),
            ));
        } else {
            return Err(Error::parse(lineno, format!("unrecognized line: {line}")));
        }
    }

    let name = name.ok_or_else(|| Error::parse(0, "missing 'monoid <name>' line"))?;
    let elements = elements.ok_or_else(|| Error::parse(0, "missing 'elements:' line"))?;
    if elements.is_empty() {
        return Err(Error::parse(0, "empty element list"));
    }
    let lookup = |tok: &str, lineno: usize| -> Result<usize> {
        elements
            .iter()
            .position(|e| e == tok)
            .ok_or_else(|| Error::parse(lineno, format!("unknown element token {tok}")))
    };
    let unit_tok = unit.ok_or_else(|| Error::parse(0, "missing 'unit:' line"))?;
    let unit = lookup(&unit_tok, 0)?;

    let n = elements.len();
    let mut table: Vec<Option<Vec<usize>>> = vec![None; n];
    for (lineno, head, toks) in rows {
        let r = lookup(&head, lineno)?;
        if toks.len() != n {
            return Err(Error::parse(
                lineno,
                format!("row {head} has {} entries, expected {n}", toks.len()),
            ));
        }
        let mut row = Vec::with_capacity(n);
        for t in &toks {
            row.push(lookup(t, lineno)?);
        }
        if table[r].is_some() {
            return Err(Error::parse(lineno, format!("duplicate row for {head}")));
        }
        table[r] = Some(row);
    }
    for (i, row) in table.iter().enumerate() {
        if row.is_none() {
            return Err(Error::parse(0, format!("missing row for {}", elements[i])));
        }
    }
    Ok(TableData {
        name,
        elements,
        unit,
        table: table.into_iter().map(Option::unwrap).collect(),
    })
}

/// Renders a table back into the file format parsed by [`parse_monoid_file`].
pub fn format_monoid_file(data: &TableData) -> String {
    let mut out = String::new();
    out.push_str(&format!("monoid {}\n", data.name));
    out.push_str(&format!("elements: {}\n", data.elements.join(" ")));
    out.push_str(&format!("unit: {}\n", data.elements[data.unit]));
    for (i, row) in data.table.iter().enumerate() {
        let toks: Vec<&str> = row.iter().map(|&e| data.elements[e].as_str()).collect();
        out.push_str(&format!("row {}: {}\n", data.elements[i], toks.join(" ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rect_band_products_follow_the_rule() {
        let p = FiniteMonoid::rectangular_band(2, 2);
        assert_eq!(p.len(), 5);
        let x11 = p.element_index("x11").unwrap();
        let x12 = p.element_index("x12").unwrap();
        let x21 = p.element_index("x21").unwrap();
        let x22 = p.element_index("x22").unwrap();
        // xij · xkl = xil
        assert_eq!(p.product(x11, x22), x12);
        assert_eq!(p.product(p.unit(), x21), x21);
        assert_eq!(p.product(x21, x21), x21);
        assert_eq!(p.product(x21, x12), x22);
    }

    #[test]
    fn rect_band_is_a_monoid_and_all_idempotent() {
        let p = FiniteMonoid::rectangular_band(2, 2);
        assert!(p.to_table_data().is_monoid());
        assert_eq!(p.idempotents(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn trivial_and_cyclic_check_out() {
        assert!(FiniteMonoid::trivial().to_table_data().is_monoid());
        let z2 = FiniteMonoid::cyclic(2);
        assert!(z2.to_table_data().is_monoid());
        assert_eq!(z2.idempotents(), vec![0]);
        assert!(z2.is_group());
        assert!(!FiniteMonoid::rectangular_band(2, 2).is_group());
    }

    #[test]
    fn broken_unit_is_rejected_with_witness() {
        // table[a][a] = a, table[a][1] = a, table[1][a] = 1: unit law broken
        let data = TableData {
            name: "broken".into(),
            elements: vec!["1".into(), "a".into()],
            unit: 0,
            table: vec![vec![0, 0], vec![1, 1]],
        };
        match data.check() {
            Err(TableDefect::UnitLaw { a }) => assert_eq!(a, "a"),
            other => panic!("expected unit-law defect, got {other:?}"),
        }
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // 2-element magma with left-zero-ish table that breaks associativity
        let data = TableData {
            name: "bad".into(),
            elements: vec!["1".into(), "a".into()],
            unit: 0,
            table: vec![vec![0, 1], vec![1, 0]],
        };
        // this one is Z/2, fine
        assert!(data.is_monoid());
        let data = TableData {
            name: "bad".into(),
            elements: vec!["1".into(), "a".into(), "b".into()],
            unit: 0,
            table: vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 1, 0]],
        };
        assert!(matches!(
            data.check(),
            Err(TableDefect::Associativity { .. })
        ));
    }

    #[test]
    fn file_roundtrip() {
        let p = FiniteMonoid::rectangular_band(2, 2);
        let text = format_monoid_file(&p.to_table_data());
        let parsed = parse_monoid_file(&text).unwrap();
        assert_eq!(parsed, p.to_table_data());
        let m = FiniteMonoid::from_table(parsed).unwrap();
        assert_eq!(m.product(1, 4), 2);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "monoid m\nelements: a b\nunit: a\nrow a: a b\nrow b: b c\n";
        match parse_monoid_file(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 5),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# header\nmonoid t\n\nelements: e # trailing\nunit: e\nrow e: e\n";
        let data = parse_monoid_file(text).unwrap();
        assert_eq!(data.elements, vec!["e"]);
        assert!(data.is_monoid());
    }
}
