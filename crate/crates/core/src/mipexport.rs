//! LP-format export of the routing model and import of solver solutions.
//!
//! Two forms are produced from the same variable set:
//!
//! * [`export_miqcp`]: the quadratic model, with the arrival, completion and
//!   departure constraints (13), (15), (16) written as binary × continuous
//!   products in bracketed quadratic sections;
//! * [`export_bigm`]: a pure MILP in which each of those products becomes a
//!   pair of big-M implications with `M` = [`crate::exact::horizon`].
//!
//! Variable names are `y_k_l`, `x_r_k_o`, `z_r_o_k`, `w_r_k_o_p`, `ta_k`,
//! `td_k`, `tc_o`, `tt_o`, with station index 0 standing for the depot. The
//! depot departure time is fixed at 0 and substituted into (13) rather than
//! declared as a variable. Every constraint is preceded by a comment naming
//! its constraint number.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::eval::{propagate, validate, DistanceTable, EvalError};
use crate::model::{CustomerId, Instance, RobotId, RoutePlan, Schedule, Sortie, StationId, Violation};

/// A model variable. Station index 0 in `Y` is the depot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarName {
    /// Vehicle travels link (k, l).
    Y(usize, usize),
    /// Robot r dispatched at station k travels to customer o.
    X(RobotId, StationId, CustomerId),
    /// Robot r returns from customer o and is collected at station k.
    Z(RobotId, CustomerId, StationId),
    /// Robot r at station k serves p right after o.
    W(RobotId, StationId, CustomerId, CustomerId),
    Arrive(StationId),
    Depart(StationId),
    Complete(CustomerId),
    Tardiness(CustomerId),
}

impl VarName {
    pub fn is_binary(self) -> bool {
        matches!(self, VarName::Y(..) | VarName::X(..) | VarName::Z(..) | VarName::W(..))
    }
}

impl fmt::Display for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VarName::Y(k, l) => write!(f, "y_{k}_{l}"),
            VarName::X(r, k, o) => write!(f, "x_{r}_{k}_{o}"),
            VarName::Z(r, o, k) => write!(f, "z_{r}_{o}_{k}"),
            VarName::W(r, k, o, p) => write!(f, "w_{r}_{k}_{o}_{p}"),
            VarName::Arrive(k) => write!(f, "ta_{k}"),
            VarName::Depart(k) => write!(f, "td_{k}"),
            VarName::Complete(o) => write!(f, "tc_{o}"),
            VarName::Tardiness(o) => write!(f, "tt_{o}"),
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("not a model variable name: `{0}`")]
pub struct VarNameError(pub String);

impl FromStr for VarName {
    type Err = VarNameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || VarNameError(s.to_string());
        let (prefix, rest) = s.split_once('_').ok_or_else(err)?;
        let idx: Vec<usize> = rest
            .split('_')
            .map(|t| {
                // reject signs, leading zeros and empty parts so names stay bijective
                if t.is_empty() || (t.len() > 1 && t.starts_with('0')) || !t.bytes().all(|b| b.is_ascii_digit()) {
                    Err(err())
                } else {
                    t.parse().map_err(|_| err())
                }
            })
            .collect::<Result<_, _>>()?;
        Ok(match (prefix, idx.as_slice()) {
            ("y", &[k, l]) => VarName::Y(k, l),
            ("x", &[r, k, o]) => VarName::X(r, k, o),
            ("z", &[r, o, k]) => VarName::Z(r, o, k),
            ("w", &[r, k, o, p]) => VarName::W(r, k, o, p),
            ("ta", &[k]) => VarName::Arrive(k),
            ("td", &[k]) => VarName::Depart(k),
            ("tc", &[o]) => VarName::Complete(o),
            ("tt", &[o]) => VarName::Tardiness(o),
            _ => return Err(err()),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sense {
    Le,
    Ge,
    Eq,
}

impl Sense {
    fn symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        }
    }
}

struct Row {
    name: String,
    linear: Vec<(f64, VarName)>,
    quadratic: Vec<(f64, VarName, VarName)>,
    sense: Sense,
    rhs: f64,
}

impl Row {
    fn new(name: impl Into<String>, sense: Sense, rhs: f64) -> Self {
        Self {
            name: name.into(),
            linear: Vec::new(),
            quadratic: Vec::new(),
            sense,
            rhs,
        }
    }

    /// Adds `coef · var`, merging with an existing term for the same variable.
    fn add(&mut self, coef: f64, var: VarName) -> &mut Self {
        match self.linear.iter_mut().find(|(_, v)| *v == var) {
            Some((c, _)) => *c += coef,
            None => self.linear.push((coef, var)),
        }
        self
    }

    fn add_product(&mut self, coef: f64, a: VarName, b: VarName) -> &mut Self {
        self.quadratic.push((coef, a, b));
        self
    }
}

/// Writes `+ 3 x` / `- x` style terms, wrapping lines at ~90 characters.
struct TermWriter<'a> {
    out: &'a mut String,
    line: usize,
    first: bool,
}

impl<'a> TermWriter<'a> {
    fn new(out: &'a mut String, prefix: &str) -> Self {
        out.push_str(prefix);
        let line = prefix.len();
        Self { out, line, first: true }
    }

    fn raw(&mut self, s: &str) {
        if self.line + s.len() > 90 {
            self.out.push_str("\n   ");
            self.line = 3;
        }
        self.out.push(' ');
        self.out.push_str(s);
        self.line += s.len() + 1;
    }

    fn term(&mut self, coef: f64, body: &str) {
        let sign = if coef < 0.0 {
            "-"
        } else if self.first {
            ""
        } else {
            "+"
        };
        let mag = coef.abs();
        let text = match (sign, mag == 1.0) {
            ("", true) => body.to_string(),
            ("", false) => format!("{mag} {body}"),
            (s, true) => format!("{s} {body}"),
            (s, false) => format!("{s} {mag} {body}"),
        };
        self.first = false;
        self.raw(&text);
    }
}

struct LpModel {
    header: Vec<String>,
    objective: Vec<(f64, VarName)>,
    sections: Vec<(String, Vec<Row>)>,
    binaries: Vec<VarName>,
    continuous: Vec<VarName>,
    footer: Vec<String>,
}

impl LpModel {
    fn num_rows(&self) -> usize {
        self.sections.iter().map(|(_, rows)| rows.len()).sum()
    }

    fn render(&self) -> String {
        let mut out = String::new();
        for h in &self.header {
            let _ = writeln!(out, "\\ {h}");
        }
        let _ = writeln!(
            out,
            "\\ binary variables: {}, continuous variables: {}, constraints: {}",
            self.binaries.len(),
            self.continuous.len(),
            self.num_rows()
        );
        out.push_str("Minimize\n");
        {
            let mut w = TermWriter::new(&mut out, " obj:");
            if self.objective.is_empty() {
                w.raw("0");
            }
            for (c, v) in &self.objective {
                w.term(*c, &v.to_string());
            }
        }
        out.push_str("\nSubject To\n");
        for (comment, rows) in &self.sections {
            let _ = writeln!(out, "\\ {comment}");
            for row in rows {
                let mut w = TermWriter::new(&mut out, &format!(" {}:", row.name));
                let mut any = false;
                for (c, v) in &row.linear {
                    if *c != 0.0 {
                        w.term(*c, &v.to_string());
                        any = true;
                    }
                }
                if !row.quadratic.is_empty() {
                    w.raw(if any { "+ [" } else { "[" });
                    w.first = true;
                    for (c, a, b) in &row.quadratic {
                        w.term(*c, &format!("{a} * {b}"));
                    }
                    w.raw("]");
                    any = true;
                }
                if !any {
                    w.raw("0");
                }
                w.raw(&format!("{} {}", row.sense.symbol(), fmt_num(row.rhs)));
                out.push('\n');
            }
        }
        out.push_str("Bounds\n");
        for v in &self.continuous {
            let _ = writeln!(out, " {v} >= 0");
        }
        out.push_str("Binaries\n");
        {
            let mut w = TermWriter::new(&mut out, "");
            for v in &self.binaries {
                w.raw(&v.to_string());
            }
        }
        out.push_str("\nEnd\n");
        for f in &self.footer {
            let _ = writeln!(out, "\\ {f}");
        }
        out
    }
}

fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else {
        format!("{x}")
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ExportOptions {
    /// Divide vehicle legs in (13) by the robot speed, as the constraint is
    /// literally printed, instead of the vehicle speed.
    pub paper_literal: bool,
}

/// Index sets and link data shared by both exports.
struct Sets<'a> {
    inst: &'a Instance,
    dist: DistanceTable,
    stations: Vec<StationId>,
    customers: Vec<CustomerId>,
    robots: Vec<RobotId>,
}

impl<'a> Sets<'a> {
    fn new(inst: &'a Instance) -> Self {
        Self {
            inst,
            dist: DistanceTable::new(inst),
            stations: (1..=inst.num_stations()).collect(),
            customers: (0..inst.num_customers()).collect(),
            robots: (0..inst.fleet_size()).collect(),
        }
    }

    /// L_ik for i in {0} ∪ S (0 = depot) and k in S.
    fn link(&self, i: usize, k: StationId) -> f64 {
        if i == 0 {
            self.dist.depot_station(k - 1)
        } else {
            self.dist.station_station(i - 1, k - 1)
        }
    }

    fn l_ko(&self, k: StationId, o: CustomerId) -> f64 {
        self.dist.station_customer(k - 1, o)
    }

    fn nodes(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(0).chain(self.stations.iter().copied())
    }

    fn binaries(&self) -> Vec<VarName> {
        let mut v = Vec::new();
        for i in self.nodes() {
            for j in self.nodes() {
                if i != j {
                    v.push(VarName::Y(i, j));
                }
            }
        }
        for &r in &self.robots {
            for &k in &self.stations {
                for &o in &self.customers {
                    v.push(VarName::X(r, k, o));
                }
            }
        }
        for &r in &self.robots {
            for &k in &self.stations {
                for &o in &self.customers {
                    v.push(VarName::Z(r, o, k));
                }
            }
        }
        for &r in &self.robots {
            for &k in &self.stations {
                for &o in &self.customers {
                    for &p in &self.customers {
                        v.push(VarName::W(r, k, o, p));
                    }
                }
            }
        }
        v
    }

    fn continuous(&self) -> Vec<VarName> {
        let mut v: Vec<VarName> = self.stations.iter().map(|&k| VarName::Arrive(k)).collect();
        v.extend(self.stations.iter().map(|&k| VarName::Depart(k)));
        v.extend(self.customers.iter().map(|&o| VarName::Complete(o)));
        v.extend(self.customers.iter().map(|&o| VarName::Tardiness(o)));
        v
    }

    fn objective(&self) -> Vec<(f64, VarName)> {
        self.inst
            .customers()
            .iter()
            .map(|c| (c.importance, VarName::Tardiness(c.id)))
            .collect()
    }

    /// Constraints (1)–(11) as sections.
    fn routing_rows(&self) -> Vec<(String, Vec<Row>)> {
        let mut sections = Vec::new();
        let (s, c, r_) = (&self.stations, &self.customers, &self.robots);

        let mut row = Row::new("c1", Sense::Eq, 1.0);
        for &k in s {
            row.add(1.0, VarName::Y(0, k));
        }
        sections.push(("(1) vehicle leaves the depot once".into(), vec![row]));
        let mut row = Row::new("c2", Sense::Eq, 1.0);
        for &k in s {
            row.add(1.0, VarName::Y(k, 0));
        }
        sections.push(("(2) vehicle returns to the depot once".into(), vec![row]));

        let rows = s
            .iter()
            .map(|&k| {
                let mut row = Row::new(format!("c3_{k}"), Sense::Eq, 1.0);
                for i in self.nodes().filter(|&i| i != k) {
                    row.add(1.0, VarName::Y(i, k));
                }
                row
            })
            .collect();
        sections.push(("(3) every station entered once".into(), rows));
        let rows = s
            .iter()
            .map(|&k| {
                let mut row = Row::new(format!("c4_{k}"), Sense::Eq, 1.0);
                for i in self.nodes().filter(|&i| i != k) {
                    row.add(1.0, VarName::Y(k, i));
                }
                row
            })
            .collect();
        sections.push(("(4) every station left once".into(), rows));

        let mut c5 = Vec::new();
        let mut c6 = Vec::new();
        let mut c7 = Vec::new();
        let mut c9 = Vec::new();
        for &r in r_ {
            for &k in s {
                let mut row = Row::new(format!("c5_{r}_{k}"), Sense::Le, 1.0);
                for &o in c {
                    row.add(1.0, VarName::X(r, k, o));
                }
                c5.push(row);
                let mut row = Row::new(format!("c6_{r}_{k}"), Sense::Le, 1.0);
                for &o in c {
                    row.add(1.0, VarName::Z(r, o, k));
                }
                c6.push(row);
                let mut row = Row::new(format!("c7_{r}_{k}"), Sense::Eq, 0.0);
                for &o in c {
                    row.add(1.0, VarName::X(r, k, o));
                }
                for &o in c {
                    row.add(-1.0, VarName::Z(r, o, k));
                }
                c7.push(row);
                let mut row = Row::new(format!("c9_{r}_{k}"), Sense::Le, self.inst.robot_range());
                for &o in c {
                    row.add(self.l_ko(k, o), VarName::X(r, k, o));
                }
                for &o in c {
                    for &p in c {
                        row.add(self.l_ko(k, o) + self.l_ko(k, p), VarName::W(r, k, o, p));
                    }
                }
                for &o in c {
                    row.add(self.l_ko(k, o), VarName::Z(r, o, k));
                }
                c9.push(row);
            }
        }
        if !c.is_empty() {
            sections.push(("(5) at most one dispatch per robot and station".into(), c5));
            sections.push(("(6) at most one collection per robot and station".into(), c6));
            sections.push(("(7) dispatches balance collections".into(), c7));
        }

        let mut c8 = Vec::new();
        for &r in r_ {
            for &k in s {
                for &o in c {
                    let mut row = Row::new(format!("c8_{r}_{k}_{o}"), Sense::Eq, 0.0);
                    row.add(1.0, VarName::X(r, k, o));
                    for &p in c {
                        row.add(1.0, VarName::W(r, k, p, o));
                    }
                    row.add(-1.0, VarName::Z(r, o, k));
                    for &p in c {
                        row.add(-1.0, VarName::W(r, k, o, p));
                    }
                    c8.push(row);
                }
            }
        }
        if !c.is_empty() {
            sections.push(("(8) route continuity".into(), c8));
            sections.push(("(9) robot travel range".into(), c9));
        }

        let rows = c
            .iter()
            .map(|&p| {
                let mut row = Row::new(format!("c10_{p}"), Sense::Eq, 1.0);
                for &r in r_ {
                    for &k in s {
                        row.add(1.0, VarName::X(r, k, p));
                    }
                }
                for &r in r_ {
                    for &k in s {
                        for &o in c {
                            row.add(1.0, VarName::W(r, k, o, p));
                        }
                    }
                }
                row
            })
            .collect::<Vec<_>>();
        if !rows.is_empty() {
            sections.push(("(10) every customer entered once".into(), rows));
        }
        let rows = c
            .iter()
            .map(|&o| {
                let mut row = Row::new(format!("c11_{o}"), Sense::Eq, 1.0);
                for &r in r_ {
                    for &k in s {
                        row.add(1.0, VarName::Z(r, o, k));
                    }
                }
                for &r in r_ {
                    for &k in s {
                        for &p in c {
                            row.add(1.0, VarName::W(r, k, o, p));
                        }
                    }
                }
                row
            })
            .collect::<Vec<_>>();
        if !rows.is_empty() {
            sections.push(("(11) every customer left once".into(), rows));
        }
        sections
    }

    fn c14(&self) -> (String, Vec<Row>) {
        let rows = self
            .stations
            .iter()
            .map(|&k| {
                let mut row = Row::new(format!("c14_{k}"), Sense::Le, 0.0);
                row.add(1.0, VarName::Arrive(k)).add(-1.0, VarName::Depart(k));
                row
            })
            .collect();
        ("(14) arrival before departure".into(), rows)
    }

    fn c17(&self) -> Option<(String, Vec<Row>)> {
        let rows: Vec<_> = self
            .inst
            .customers()
            .iter()
            .map(|cu| {
                let mut row = Row::new(format!("c17_{}", cu.id), Sense::Le, cu.deadline);
                row.add(1.0, VarName::Complete(cu.id))
                    .add(-1.0, VarName::Tardiness(cu.id));
                row
            })
            .collect();
        (!rows.is_empty()).then(|| ("(17) tardiness".into(), rows))
    }

    fn header(&self, form: &str) -> Vec<String> {
        let i = self.inst;
        vec![
            format!("vehicle-robot routing model, {form}"),
            format!(
                "stations: {}, customers: {}, robots: {}, range: {}, vehicle speed: {}, robot speed: {}",
                i.num_stations(),
                i.num_customers(),
                i.fleet_size(),
                i.robot_range(),
                i.vehicle_speed(),
                i.robot_speed()
            ),
            "(12) depot departure t_0 = 0 is substituted into (13)".into(),
        ]
    }

    /// Customer-to-customer lengths are not used by any constraint; they are
    /// listed for reference only.
    fn footer(&self) -> Vec<String> {
        let mut f = Vec::new();
        if self.customers.len() > 1 {
            f.push("customer-to-customer lengths (unused by the model):".into());
            for &o in &self.customers {
                for &p in &self.customers {
                    if o < p {
                        f.push(format!("L_{o}_{p} = {}", self.dist.customer_customer(o, p)));
                    }
                }
            }
        }
        f
    }
}

/// The quadratic model.
pub fn export_miqcp(instance: &Instance, options: ExportOptions) -> String {
    let sets = Sets::new(instance);
    let vv = if options.paper_literal {
        instance.robot_speed()
    } else {
        instance.vehicle_speed()
    };
    let vr = instance.robot_speed();
    let (s, c, r_) = (&sets.stations, &sets.customers, &sets.robots);

    let mut sections = sets.routing_rows();
    let mut header = sets.header("quadratic form");
    if options.paper_literal {
        header.push("vehicle legs in (13) divided by the robot speed (literal variant)".into());
    }

    let rows = s
        .iter()
        .map(|&k| {
            let mut row = Row::new(format!("c13_{k}"), Sense::Eq, 0.0);
            row.add(1.0, VarName::Arrive(k));
            for i in sets.nodes().filter(|&i| i != k) {
                row.add(-sets.link(i, k) / vv, VarName::Y(i, k));
            }
            for &i in s.iter().filter(|&&i| i != k) {
                row.add_product(-1.0, VarName::Y(i, k), VarName::Depart(i));
            }
            row
        })
        .collect();
    sections.push(("(13) arrival time at each station".into(), rows));
    sections.push(sets.c14());

    let rows = c
        .iter()
        .map(|&p| {
            let mut row = Row::new(format!("c15_{p}"), Sense::Eq, 0.0);
            row.add(1.0, VarName::Complete(p));
            for &r in r_ {
                for &k in s {
                    row.add(-sets.l_ko(k, p) / vr, VarName::X(r, k, p));
                }
            }
            for &r in r_ {
                for &k in s {
                    for &o in c {
                        row.add(-(sets.l_ko(k, o) + sets.l_ko(k, p)) / vr, VarName::W(r, k, o, p));
                    }
                }
            }
            for &r in r_ {
                for &k in s {
                    row.add_product(-1.0, VarName::X(r, k, p), VarName::Arrive(k));
                }
            }
            for &r in r_ {
                for &k in s {
                    for &o in c {
                        row.add_product(-1.0, VarName::W(r, k, o, p), VarName::Complete(o));
                    }
                }
            }
            row
        })
        .collect::<Vec<_>>();
    if !rows.is_empty() {
        sections.push(("(15) completion time of each service".into(), rows));
    }

    let mut rows = Vec::new();
    for &r in r_ {
        for &k in s {
            for &o in c {
                let mut row = Row::new(format!("c16_{r}_{k}_{o}"), Sense::Ge, 0.0);
                row.add(1.0, VarName::Depart(k))
                    .add(-sets.l_ko(k, o) / vr, VarName::Z(r, o, k))
                    .add_product(-1.0, VarName::Z(r, o, k), VarName::Complete(o));
                rows.push(row);
            }
        }
    }
    if !rows.is_empty() {
        sections.push(("(16) vehicle waits for every robot".into(), rows));
    }
    if let Some(sec) = sets.c17() {
        sections.push(sec);
    }

    LpModel {
        header,
        objective: sets.objective(),
        sections,
        binaries: sets.binaries(),
        continuous: sets.continuous(),
        footer: sets.footer(),
    }
    .render()
}

/// The big-M linearization.
pub fn export_bigm(instance: &Instance) -> String {
    let sets = Sets::new(instance);
    let big_m = crate::exact::horizon(instance);
    let (vv, vr) = (instance.vehicle_speed(), instance.robot_speed());
    let (s, c, r_) = (&sets.stations, &sets.customers, &sets.robots);

    let mut header = sets.header("big-M linearization");
    header.push(format!("M = {big_m}"));
    header.push(
        "M = longest station-permutation ride time + sum over customers of the longest out-and-back robot trip".into(),
    );
    let mut sections = sets.routing_rows();

    // t_a[k] - t_d[i] = L_ik / VV when y_ik = 1
    let mut rows = Vec::new();
    for &k in s {
        for i in sets.nodes().filter(|&i| i != k) {
            let t = sets.link(i, k) / vv;
            let mut lo = Row::new(format!("c13_{i}_{k}_lo"), Sense::Ge, t - big_m);
            let mut hi = Row::new(format!("c13_{i}_{k}_hi"), Sense::Le, t + big_m);
            lo.add(1.0, VarName::Arrive(k));
            hi.add(1.0, VarName::Arrive(k));
            if i != 0 {
                lo.add(-1.0, VarName::Depart(i));
                hi.add(-1.0, VarName::Depart(i));
            }
            lo.add(-big_m, VarName::Y(i, k));
            hi.add(big_m, VarName::Y(i, k));
            rows.push(lo);
            rows.push(hi);
        }
    }
    sections.push(("(13) arrival time at each station, per incoming link".into(), rows));
    sections.push(sets.c14());

    let mut rows = Vec::new();
    for &p in c {
        for &r in r_ {
            for &k in s {
                let t = sets.l_ko(k, p) / vr;
                let mut lo = Row::new(format!("c15x_{r}_{k}_{p}_lo"), Sense::Ge, t - big_m);
                let mut hi = Row::new(format!("c15x_{r}_{k}_{p}_hi"), Sense::Le, t + big_m);
                lo.add(1.0, VarName::Complete(p))
                    .add(-1.0, VarName::Arrive(k))
                    .add(-big_m, VarName::X(r, k, p));
                hi.add(1.0, VarName::Complete(p))
                    .add(-1.0, VarName::Arrive(k))
                    .add(big_m, VarName::X(r, k, p));
                rows.push(lo);
                rows.push(hi);
            }
        }
        for &r in r_ {
            for &k in s {
                for &o in c {
                    let t = (sets.l_ko(k, o) + sets.l_ko(k, p)) / vr;
                    let mut lo = Row::new(format!("c15w_{r}_{k}_{o}_{p}_lo"), Sense::Ge, t - big_m);
                    let mut hi = Row::new(format!("c15w_{r}_{k}_{o}_{p}_hi"), Sense::Le, t + big_m);
                    lo.add(1.0, VarName::Complete(p))
                        .add(-1.0, VarName::Complete(o))
                        .add(-big_m, VarName::W(r, k, o, p));
                    hi.add(1.0, VarName::Complete(p))
                        .add(-1.0, VarName::Complete(o))
                        .add(big_m, VarName::W(r, k, o, p));
                    rows.push(lo);
                    rows.push(hi);
                }
            }
        }
    }
    if !rows.is_empty() {
        sections.push(("(15) completion time of each service, per predecessor".into(), rows));
    }

    let mut rows = Vec::new();
    for &r in r_ {
        for &k in s {
            for &o in c {
                let mut row = Row::new(format!("c16_{r}_{k}_{o}"), Sense::Ge, sets.l_ko(k, o) / vr - big_m);
                row.add(1.0, VarName::Depart(k))
                    .add(-1.0, VarName::Complete(o))
                    .add(-big_m, VarName::Z(r, o, k));
                rows.push(row);
            }
        }
    }
    if !rows.is_empty() {
        sections.push(("(16) vehicle waits for every robot".into(), rows));
    }
    if let Some(sec) = sets.c17() {
        sections.push(sec);
    }

    LpModel {
        header,
        objective: sets.objective(),
        sections,
        binaries: sets.binaries(),
        continuous: sets.continuous(),
        footer: sets.footer(),
    }
    .render()
}

/// Numbers of (binary, continuous) variables of either export.
pub fn variable_counts(instance: &Instance) -> (usize, usize) {
    let sets = Sets::new(instance);
    (sets.binaries().len(), sets.continuous().len())
}

/// Value of every model variable induced by a plan, times taken from the
/// earliest schedule. Fails for structurally invalid plans.
pub fn plan_assignment(instance: &Instance, plan: &RoutePlan) -> Result<BTreeMap<VarName, f64>, EvalError> {
    let schedule = propagate(instance, plan)?;
    let sets = Sets::new(instance);
    let mut values: BTreeMap<VarName, f64> = sets.binaries().into_iter().map(|v| (v, 0.0)).collect();
    let mut prev = 0;
    for &k in &plan.tour {
        values.insert(VarName::Y(prev, k), 1.0);
        prev = k;
    }
    values.insert(VarName::Y(prev, 0), 1.0);
    for s in &plan.sorties {
        values.insert(VarName::X(s.robot, s.station, s.first()), 1.0);
        for w in s.services().windows(2) {
            values.insert(VarName::W(s.robot, s.station, w[0], w[1]), 1.0);
        }
        values.insert(VarName::Z(s.robot, s.last(), s.station), 1.0);
    }
    for &k in &sets.stations {
        values.insert(VarName::Arrive(k), schedule.arrive_at(k));
        values.insert(VarName::Depart(k), schedule.depart_at(k));
    }
    for &o in &sets.customers {
        values.insert(VarName::Complete(o), schedule.complete[o]);
        values.insert(VarName::Tardiness(o), schedule.tardiness[o]);
    }
    Ok(values)
}

/// `name value` lines, the format read by [`import_solution`].
pub fn write_solution(values: &BTreeMap<VarName, f64>) -> String {
    let mut out = String::new();
    for (v, x) in values {
        let _ = writeln!(out, "{v} {x}");
    }
    out
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ImportError {
    #[error("line {line}: bad value `{text}`")]
    BadValue { line: usize, text: String },
    #[error("variable {name} is outside the instance's index sets")]
    UnknownVariable { name: String },
    #[error("binary {name} has fractional value {value}")]
    Fractional { name: String, value: f64 },
    #[error("inconsistent robot route, continuity (8) broken: {0}")]
    Chain(String),
    #[error("customer coverage (10)/(11) violated: {0}")]
    Coverage(String),
    #[error("vehicle tour is inconsistent: {0}")]
    Tour(String),
}

/// A solver time variable that disagrees with the recomputed schedule.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeMismatch {
    pub variable: VarName,
    pub solver: f64,
    pub propagated: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ImportedSolution {
    pub plan: RoutePlan,
    pub schedule: Schedule,
    /// Violations of the reconstructed plan (only range violations can remain).
    pub violations: Vec<Violation>,
    /// Time variables off by more than [`TIME_TOLERANCE`].
    pub mismatches: Vec<TimeMismatch>,
}

pub const TIME_TOLERANCE: f64 = 1e-4;
const INTEGRALITY_TOLERANCE: f64 = 1e-6;

/// Reads `name value` pairs (Gurobi `.sol` style; `#` starts a comment and
/// lines without a model variable name are skipped), rebuilds the plan from
/// the nonzero binaries and recomputes its schedule.
pub fn import_solution(instance: &Instance, text: &str) -> Result<ImportedSolution, ImportError> {
    let n_s = instance.num_stations();
    let n_c = instance.num_customers();
    let n_r = instance.fleet_size();
    let station_ok = |k: usize| (1..=n_s).contains(&k);

    let mut ones: Vec<VarName> = Vec::new();
    let mut times: HashMap<VarName, f64> = HashMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let mut tokens = line.split_whitespace();
        let Some(name) = tokens.next() else { continue };
        let Ok(var) = name.parse::<VarName>() else { continue };
        let raw = tokens.next().unwrap_or("");
        let value: f64 = raw.parse().map_err(|_| ImportError::BadValue {
            line: lineno + 1,
            text: raw.to_string(),
        })?;
        let known = match var {
            VarName::Y(k, l) => k != l && (k == 0 || station_ok(k)) && (l == 0 || station_ok(l)),
            VarName::X(r, k, o) | VarName::Z(r, o, k) => r < n_r && station_ok(k) && o < n_c,
            VarName::W(r, k, o, p) => r < n_r && station_ok(k) && o < n_c && p < n_c,
            VarName::Arrive(k) | VarName::Depart(k) => station_ok(k),
            VarName::Complete(o) | VarName::Tardiness(o) => o < n_c,
        };
        if !known {
            return Err(ImportError::UnknownVariable { name: name.to_string() });
        }
        if var.is_binary() {
            if (value - 1.0).abs() <= INTEGRALITY_TOLERANCE {
                ones.push(var);
            } else if value.abs() > INTEGRALITY_TOLERANCE {
                return Err(ImportError::Fractional {
                    name: name.to_string(),
                    value,
                });
            }
        } else {
            times.insert(var, value);
        }
    }
    ones.sort_unstable();
    ones.dedup();

    let sorties = rebuild_sorties(&ones)?;
    let mut served = vec![0usize; n_c];
    for s in &sorties {
        for &o in s.services() {
            served[o] += 1;
        }
    }
    if let Some(o) = served.iter().position(|&n| n != 1) {
        return Err(ImportError::Coverage(format!(
            "customer {o} is served {} times",
            served[o]
        )));
    }
    let tour = rebuild_tour(&ones, n_s)?;

    let mut plan = RoutePlan { tour, sorties };
    plan.canonicalize();
    let violations = validate(instance, &plan);
    let schedule = propagate(instance, &plan).map_err(|e| ImportError::Chain(e.to_string()))?;

    let mut mismatches = Vec::new();
    let mut keys: Vec<_> = times.keys().copied().collect();
    keys.sort_unstable();
    for var in keys {
        let solver = times[&var];
        let propagated = match var {
            VarName::Arrive(k) => schedule.arrive_at(k),
            VarName::Depart(k) => schedule.depart_at(k),
            VarName::Complete(o) => schedule.complete[o],
            VarName::Tardiness(o) => schedule.tardiness[o],
            _ => unreachable!("binaries are not timed"),
        };
        if (solver - propagated).abs() > TIME_TOLERANCE {
            mismatches.push(TimeMismatch {
                variable: var,
                solver,
                propagated,
            });
        }
    }
    Ok(ImportedSolution {
        plan,
        schedule,
        violations,
        mismatches,
    })
}

fn rebuild_sorties(ones: &[VarName]) -> Result<Vec<Sortie>, ImportError> {
    let mut starts: BTreeMap<(RobotId, StationId), Vec<CustomerId>> = BTreeMap::new();
    let mut next: HashMap<(RobotId, StationId, CustomerId), Vec<CustomerId>> = HashMap::new();
    let mut ends: HashMap<(RobotId, StationId, CustomerId), bool> = HashMap::new();
    for &v in ones {
        match v {
            VarName::X(r, k, o) => starts.entry((r, k)).or_default().push(o),
            VarName::W(r, k, o, p) => next.entry((r, k, o)).or_default().push(p),
            VarName::Z(r, o, k) => {
                ends.insert((r, k, o), false);
            }
            _ => {}
        }
    }
    let mut used_w = 0usize;
    let mut sorties = Vec::new();
    for ((r, k), firsts) in starts {
        if firsts.len() > 1 {
            return Err(ImportError::Chain(format!(
                "robot {r} is dispatched {} times at station {k}",
                firsts.len()
            )));
        }
        let mut list = vec![firsts[0]];
        loop {
            let cur = *list.last().expect("nonempty");
            match next.get(&(r, k, cur)).map(Vec::as_slice) {
                None | Some([]) => {
                    match ends.get_mut(&(r, k, cur)) {
                        Some(seen) => *seen = true,
                        None => {
                            return Err(ImportError::Chain(format!(
                                "robot {r} at station {k} is never collected after customer {cur}"
                            )))
                        }
                    }
                    break;
                }
                Some(&[p]) => {
                    if list.contains(&p) {
                        return Err(ImportError::Chain(format!(
                            "robot {r} at station {k} revisits customer {p}"
                        )));
                    }
                    used_w += 1;
                    list.push(p);
                }
                Some(many) => {
                    return Err(ImportError::Chain(format!(
                        "robot {r} at station {k} has {} successors after customer {cur}",
                        many.len()
                    )))
                }
            }
        }
        sorties.push(Sortie::new(r, k, list).expect("chain is duplicate-free"));
    }
    let total_w: usize = next.values().map(Vec::len).sum();
    if used_w != total_w {
        let mut stray: Vec<_> = next.keys().copied().collect();
        stray.sort_unstable();
        let (r, k, o) = stray
            .into_iter()
            .find(|&(r, k, o)| {
                !sorties
                    .iter()
                    .any(|s| s.robot == r && s.station == k && s.services().contains(&o))
            })
            .unwrap_or((0, 0, 0));
        return Err(ImportError::Chain(format!(
            "w variable of robot {r} at station {k} after customer {o} is not reachable from a dispatch"
        )));
    }
    if let Some((&(r, k, o), _)) = ends.iter().filter(|(_, &seen)| !seen).min_by_key(|(key, _)| **key) {
        return Err(ImportError::Chain(format!(
            "robot {r} is collected at station {k} from customer {o} without a matching dispatch"
        )));
    }
    Ok(sorties)
}

fn rebuild_tour(ones: &[VarName], n_s: usize) -> Result<Vec<StationId>, ImportError> {
    let mut succ: HashMap<usize, Vec<usize>> = HashMap::new();
    for &v in ones {
        if let VarName::Y(k, l) = v {
            succ.entry(k).or_default().push(l);
        }
    }
    let mut tour = Vec::with_capacity(n_s);
    let mut cur = 0;
    loop {
        let nexts = succ.get(&cur).map(Vec::as_slice).unwrap_or(&[]);
        let &[nxt] = nexts else {
            return Err(ImportError::Tour(format!(
                "node {cur} has {} outgoing links",
                nexts.len()
            )));
        };
        if nxt == 0 {
            break;
        }
        if tour.contains(&nxt) || tour.len() == n_s {
            return Err(ImportError::Tour(format!("station {nxt} is entered twice")));
        }
        tour.push(nxt);
        cur = nxt;
    }
    if tour.len() != n_s {
        return Err(ImportError::Tour(format!(
            "tour visits {} of {n_s} stations",
            tour.len()
        )));
    }
    let links: usize = succ.values().map(Vec::len).sum();
    if links != n_s + 1 {
        return Err(ImportError::Tour(format!(
            "{links} vehicle links set, expected {}",
            n_s + 1
        )));
    }
    Ok(tour)
}
