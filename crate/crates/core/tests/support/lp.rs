//! A small reader for the LP text the exporter writes, enough to substitute
//! values and check every row.

use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug, PartialEq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Row {
    pub name: String,
    pub linear: Vec<(f64, String)>,
    pub quadratic: Vec<(f64, String, String)>,
    pub sense: Sense,
    pub rhs: f64,
}

#[derive(Clone, Debug, Default)]
pub struct Lp {
    pub objective: Vec<(f64, String)>,
    pub rows: Vec<Row>,
    pub nonnegative: BTreeSet<String>,
    pub binaries: BTreeSet<String>,
    /// Comment lines, without the leading backslash.
    pub comments: Vec<String>,
}

impl Lp {
    pub fn variables(&self) -> BTreeSet<String> {
        let mut v: BTreeSet<String> = self.binaries.clone();
        v.extend(self.nonnegative.iter().cloned());
        for row in &self.rows {
            v.extend(row.linear.iter().map(|(_, n)| n.clone()));
            for (_, a, b) in &row.quadratic {
                v.insert(a.clone());
                v.insert(b.clone());
            }
        }
        v.extend(self.objective.iter().map(|(_, n)| n.clone()));
        v
    }
}

fn is_number(t: &str) -> bool {
    t.parse::<f64>().is_ok()
}

/// Parses `[sign] [coef] var` terms, with an optional `[ ... ]` quadratic block.
fn parse_terms(tokens: &[String]) -> (Vec<(f64, String)>, Vec<(f64, String, String)>) {
    let mut linear = Vec::new();
    let mut quadratic = Vec::new();
    let mut i = 0;
    let mut in_quad = false;
    while i < tokens.len() {
        let t = tokens[i].as_str();
        match t {
            "[" => {
                in_quad = true;
                i += 1;
                continue;
            }
            "]" => {
                in_quad = false;
                i += 1;
                continue;
            }
            "+" if tokens.get(i + 1).map(String::as_str) == Some("[") => {
                i += 1;
                continue;
            }
            _ => {}
        }
        let mut sign = 1.0;
        if t == "+" || t == "-" {
            if t == "-" {
                sign = -1.0;
            }
            i += 1;
        }
        let mut coef = 1.0;
        if is_number(&tokens[i]) {
            coef = tokens[i].parse().unwrap();
            i += 1;
            if i == tokens.len() {
                assert_eq!(coef, 0.0, "dangling constant");
                break;
            }
        }
        let var = tokens[i].clone();
        i += 1;
        if in_quad {
            assert_eq!(tokens[i], "*", "expected product in quadratic block");
            let other = tokens[i + 1].clone();
            i += 2;
            quadratic.push((sign * coef, var, other));
        } else if var != "0" {
            linear.push((sign * coef, var));
        }
    }
    (linear, quadratic)
}

fn tokenize(text: &str) -> Vec<String> {
    text.replace('[', " [ ")
        .replace(']', " ] ")
        .split_whitespace()
        .map(str::to_string)
        .collect()
}

pub fn parse(text: &str) -> Lp {
    let mut lp = Lp::default();
    let mut section = "";
    let mut body: Vec<String> = Vec::new();
    let flush = |section: &str, body: &mut Vec<String>, lp: &mut Lp| {
        if body.is_empty() {
            return;
        }
        let tokens = tokenize(&body.join(" "));
        body.clear();
        match section {
            "min" => {
                let name_end = tokens.iter().position(|t| t.ends_with(':')).unwrap();
                let (lin, quad) = parse_terms(&tokens[name_end + 1..]);
                assert!(quad.is_empty());
                lp.objective = lin;
            }
            "st" => {
                let mut starts: Vec<usize> = tokens
                    .iter()
                    .enumerate()
                    .filter(|(_, t)| t.ends_with(':'))
                    .map(|(i, _)| i)
                    .collect();
                starts.push(tokens.len());
                for w in starts.windows(2) {
                    let row = &tokens[w[0]..w[1]];
                    let name = row[0].trim_end_matches(':').to_string();
                    let s = row
                        .iter()
                        .position(|t| t == "<=" || t == ">=" || t == "=")
                        .unwrap_or_else(|| panic!("row {name} has no sense"));
                    let (linear, quadratic) = parse_terms(&row[1..s]);
                    let sense = match row[s].as_str() {
                        "<=" => Sense::Le,
                        ">=" => Sense::Ge,
                        _ => Sense::Eq,
                    };
                    let rhs = row[s + 1].parse().unwrap();
                    assert_eq!(row.len(), s + 2, "trailing tokens in row {name}");
                    lp.rows.push(Row {
                        name,
                        linear,
                        quadratic,
                        sense,
                        rhs,
                    });
                }
            }
            "bounds" => {
                for chunk in tokens.chunks(3) {
                    assert_eq!(chunk[1], ">=");
                    assert_eq!(chunk[2], "0");
                    lp.nonnegative.insert(chunk[0].clone());
                }
            }
            "bin" => lp.binaries.extend(tokens),
            _ => panic!("content outside a section"),
        }
    };
    for line in text.lines() {
        let (code, comment) = match line.find('\\') {
            Some(i) => (&line[..i], Some(line[i + 1..].trim())),
            None => (line, None),
        };
        if let Some(c) = comment {
            lp.comments.push(c.to_string());
        }
        let next = match code.trim() {
            "Minimize" => Some("min"),
            "Subject To" => Some("st"),
            "Bounds" => Some("bounds"),
            "Binaries" => Some("bin"),
            "End" => Some("end"),
            _ => None,
        };
        match next {
            Some(s) => {
                flush(section, &mut body, &mut lp);
                section = s;
            }
            None => {
                if !code.trim().is_empty() {
                    body.push(code.to_string());
                }
            }
        }
    }
    flush(section, &mut body, &mut lp);
    lp
}

/// Every row, bound and integrality requirement broken by `values` beyond
/// `tol`, as readable messages. Missing variables are reported too.
pub fn check(lp: &Lp, values: &BTreeMap<String, f64>, tol: f64) -> Vec<String> {
    let mut bad = Vec::new();
    let get = |n: &str, bad: &mut Vec<String>| match values.get(n) {
        Some(v) => *v,
        None => {
            bad.push(format!("no value for {n}"));
            0.0
        }
    };
    for row in &lp.rows {
        let mut lhs = 0.0;
        for (c, v) in &row.linear {
            lhs += c * get(v, &mut bad);
        }
        for (c, a, b) in &row.quadratic {
            lhs += c * get(a, &mut bad) * get(b, &mut bad);
        }
        let ok = match row.sense {
            Sense::Le => lhs <= row.rhs + tol,
            Sense::Ge => lhs >= row.rhs - tol,
            Sense::Eq => (lhs - row.rhs).abs() <= tol,
        };
        if !ok {
            bad.push(format!("{}: lhs {lhs} {:?} {}", row.name, row.sense, row.rhs));
        }
    }
    for v in &lp.nonnegative {
        if get(v, &mut bad) < -tol {
            bad.push(format!("{v} is negative"));
        }
    }
    for v in &lp.binaries {
        let x = get(v, &mut bad);
        if x != 0.0 && x != 1.0 {
            bad.push(format!("{v} = {x} is not binary"));
        }
    }
    bad
}

pub fn objective(lp: &Lp, values: &BTreeMap<String, f64>) -> f64 {
    lp.objective.iter().map(|(c, v)| c * values[v]).sum()
}
