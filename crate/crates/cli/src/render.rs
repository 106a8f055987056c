use std::io::{self, Write};

use serde::Serialize;

use crate::compute::{ClosedFormRow, CoeffIdealRow, Example1Row, Example2Row, IdentityRow};
use crate::config::Format;

/// A header and string cells, printable as aligned text or CSV.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

pub trait Tabular {
    fn header() -> Vec<&'static str>;
    fn cells(&self) -> Vec<String>;
}

impl Table {
    pub fn of<T: Tabular>(rows: &[T]) -> Self {
        Table {
            header: T::header().into_iter().map(String::from).collect(),
            rows: rows.iter().map(Tabular::cells).collect(),
        }
    }

    pub fn write_text(&self, w: &mut impl Write) -> io::Result<()> {
        let mut width: Vec<usize> = self.header.iter().map(String::len).collect();
        for row in &self.rows {
            for (k, c) in row.iter().enumerate() {
                width[k] = width[k].max(c.len());
            }
        }
        let line = |w: &mut dyn Write, cells: &[String]| -> io::Result<()> {
            let parts: Vec<String> = cells
                .iter()
                .zip(&width)
                .map(|(c, &n)| format!("{c:>n$}"))
                .collect();
            writeln!(w, "{}", parts.join("  "))
        };
        line(w, &self.header)?;
        for row in &self.rows {
            line(w, row)?;
        }
        Ok(())
    }

    pub fn write_csv(&self, w: impl Write) -> io::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(&self.header)?;
        for row in &self.rows {
            out.write_record(row)?;
        }
        out.flush()
    }
}

/// Writes `table` as text or CSV, or `json` when JSON is asked for.
pub fn emit<J: Serialize>(
    w: &mut impl Write,
    format: Format,
    table: &Table,
    json: &J,
) -> io::Result<()> {
    match format {
        Format::Table => table.write_text(w),
        Format::Csv => table.write_csv(w),
        Format::Json => {
            serde_json::to_writer_pretty(&mut *w, json)?;
            writeln!(w)
        }
    }
}

fn yes(b: bool) -> String {
    if b { "yes" } else { "NO" }.into()
}

impl Tabular for Example1Row {
    fn header() -> Vec<&'static str> {
        vec![
            "n",
            "indeg_tor",
            "reg_tor",
            "pred_reg_tor",
            "indeg_ext",
            "pred_indeg_ext",
            "reg_ext",
            "pred_reg_ext",
            "certified",
            "match",
        ]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.indeg_tor.to_string(),
            self.reg_tor.to_string(),
            self.predicted_reg_tor.to_string(),
            self.indeg_ext.to_string(),
            self.predicted_indeg_ext.to_string(),
            self.reg_ext.to_string(),
            self.predicted_reg_ext.to_string(),
            yes(self.certified),
            yes(self.tor_matches && self.ext_matches),
        ]
    }
}

impl Tabular for Example2Row {
    fn header() -> Vec<&'static str> {
        vec![
            "n",
            "indeg_tor",
            "reg_tor",
            "n+f(n)",
            "indeg_ext",
            "reg_ext",
            "certified",
            "match",
        ]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.indeg_tor.to_string(),
            self.reg_tor.to_string(),
            self.predicted_reg_tor.to_string(),
            self.indeg_ext.to_string(),
            self.reg_ext.to_string(),
            yes(self.certified),
            yes(self.tor_matches && self.ext_matches),
        ]
    }
}

impl Tabular for CoeffIdealRow {
    fn header() -> Vec<&'static str> {
        vec![
            "n",
            "generators",
            "predicted",
            "reg",
            "predicted",
            "routes_agree",
            "certified",
        ]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.generators.to_string(),
            self.predicted_generators.to_string(),
            self.regularity.to_string(),
            self.predicted_regularity.to_string(),
            yes(self.routes_agree),
            yes(self.certified),
        ]
    }
}

impl Tabular for IdentityRow {
    fn header() -> Vec<&'static str> {
        vec!["n", "anticommute", "d_squared_zero"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            yes(self.anticommute),
            yes(self.d_squared),
        ]
    }
}

/// Closed-form rows have one column per quantity defined on the family.
pub fn closed_form_table(rows: &[ClosedFormRow]) -> Table {
    let mut header = vec!["n".to_string()];
    if let Some(first) = rows.first() {
        header.extend(first.values.iter().map(|(q, _)| q.name().to_string()));
    }
    Table {
        header,
        rows: rows
            .iter()
            .map(|r| {
                std::iter::once(r.n.to_string())
                    .chain(r.values.iter().map(|(_, v)| v.to_string()))
                    .collect()
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_csv() {
        let t = Table {
            header: vec!["n".into(), "reg".into()],
            rows: vec![
                vec!["1".into(), "-inf".into()],
                vec!["10".into(), "3".into()],
            ],
        };
        let mut s = Vec::new();
        t.write_text(&mut s).unwrap();
        assert_eq!(
            String::from_utf8(s).unwrap(),
            " n   reg\n 1  -inf\n10     3\n"
        );
        let mut s = Vec::new();
        t.write_csv(&mut s).unwrap();
        assert_eq!(String::from_utf8(s).unwrap(), "n,reg\n1,-inf\n10,3\n");
    }
}
