//! Shortest round-trip number formatting.

/// Plain decimal for `1e-5 <= |x| < 1e16` and zero, exponent form otherwise.
/// Either way the text parses back to the same `f64`.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let a = x.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// A CSV table with a `t` column first.
pub struct Table {
    header: Vec<String>,
    columns: Vec<Vec<Option<f64>>>,
}

impl Table {
    pub fn new(times: &[f64]) -> Self {
        Table { header: vec!["t".into()], columns: vec![times.iter().map(|&t| Some(t)).collect()] }
    }

    pub fn rename_first(&mut self, name: &str) {
        self.header[0] = name.to_string();
    }

    pub fn push(&mut self, name: String, values: impl IntoIterator<Item = f64>) {
        self.push_partial(name, values.into_iter().map(Some));
    }

    /// `None` cells are written empty.
    pub fn push_partial(&mut self, name: String, values: impl IntoIterator<Item = Option<f64>>) {
        let col: Vec<_> = values.into_iter().collect();
        assert_eq!(col.len(), self.columns[0].len(), "column {name} has the wrong length");
        self.header.push(name);
        self.columns.push(col);
    }

    pub fn render(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in 0..self.columns[0].len() {
            let cells: Vec<String> = self.columns.iter().map(|c| c[row].map(num).unwrap_or_default()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// `base` or `base[label]`.
pub fn column(base: &str, label: Option<&str>) -> String {
    match label {
        Some(l) => format!("{base}[{l}]"),
        None => base.to_string(),
    }
}
