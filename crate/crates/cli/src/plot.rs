//! SVG 1.1 route plots: depot square, station circles, customer pentagons,
//! one solid polyline per vehicle leg and one dashed polyline per robot leg.

use std::fmt::Write as _;

use mothership::{Instance, Point, RoutePlan};

const MARGIN: f64 = 40.0;

const ROBOT_COLORS: [&str; 6] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];
const ROBOT_DASHES: [&str; 4] = ["6 4", "2 3", "10 3 2 3", "4 2"];

struct Frame {
    min: Point,
    max_y: f64,
    scale: f64,
}

impl Frame {
    fn new(points: &[Point], width: f64) -> (Self, f64) {
        let (mut lo, mut hi) = (points[0], points[0]);
        for p in points {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        }
        let span_x = (hi.x - lo.x).max(1e-9);
        let span_y = (hi.y - lo.y).max(1e-9);
        let scale = (width - 2.0 * MARGIN) / span_x.max(span_y);
        let height = span_y * scale + 2.0 * MARGIN;
        (
            Self {
                min: lo,
                max_y: hi.y,
                scale,
            },
            height,
        )
    }

    /// Screen coordinates, y pointing down.
    fn map(&self, p: Point) -> (f64, f64) {
        (
            MARGIN + (p.x - self.min.x) * self.scale,
            MARGIN + (self.max_y - p.y) * self.scale,
        )
    }
}

fn pentagon(cx: f64, cy: f64, r: f64) -> String {
    (0..5)
        .map(|i| {
            let a = -std::f64::consts::FRAC_PI_2 + i as f64 * 2.0 * std::f64::consts::PI / 5.0;
            format!("{:.2},{:.2}", cx + r * a.cos(), cy + r * a.sin())
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn polyline(out: &mut String, f: &Frame, a: Point, b: Point, attrs: &str) {
    let (x1, y1) = f.map(a);
    let (x2, y2) = f.map(b);
    let _ = writeln!(
        out,
        r#"  <polyline points="{x1:.2},{y1:.2} {x2:.2},{y2:.2}" fill="none" {attrs}/>"#
    );
}

fn label(out: &mut String, x: f64, y: f64, text: &str) {
    let _ = writeln!(
        out,
        r#"  <text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11">{text}</text>"#,
        x + 7.0,
        y - 7.0
    );
}

/// Renders the instance, plus the routes of `plan` when given.
pub fn render(instance: &Instance, plan: Option<&RoutePlan>, width: f64, title: &str) -> String {
    let station_at = |k: usize| instance.station(k).map(|s| s.location);
    let mut points = vec![instance.depot()];
    points.extend(instance.stations().iter().map(|s| s.location));
    points.extend(instance.customers().iter().map(|c| c.location));
    let (frame, height) = Frame::new(&points, width);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(out, "  <title>{title}</title>");
    let _ = writeln!(
        out,
        r#"  <rect x="0" y="0" width="{width:.0}" height="{height:.0}" fill="white"/>"#
    );

    if let Some(plan) = plan {
        out.push_str("  <g id=\"vehicle\">\n");
        let mut stops = vec![instance.depot()];
        stops.extend(plan.tour.iter().filter_map(|&k| station_at(k)));
        stops.push(instance.depot());
        for leg in stops.windows(2) {
            polyline(&mut out, &frame, leg[0], leg[1], r#"stroke="black" stroke-width="2""#);
        }
        out.push_str("  </g>\n  <g id=\"robots\">\n");
        for s in &plan.sorties {
            let Some(base) = station_at(s.station) else { continue };
            let color = ROBOT_COLORS[s.robot % ROBOT_COLORS.len()];
            let dash = ROBOT_DASHES[s.robot % ROBOT_DASHES.len()];
            let attrs = format!(r#"stroke="{color}" stroke-width="1.5" stroke-dasharray="{dash}""#);
            let mut path = vec![base];
            path.extend(
                s.services()
                    .iter()
                    .filter_map(|&o| instance.customer(o))
                    .map(|c| c.location),
            );
            path.push(base);
            for leg in path.windows(2) {
                polyline(&mut out, &frame, leg[0], leg[1], &attrs);
            }
        }
        out.push_str("  </g>\n");
    }

    out.push_str("  <g id=\"nodes\">\n");
    let (dx, dy) = frame.map(instance.depot());
    let _ = writeln!(
        out,
        r#"  <rect x="{:.2}" y="{:.2}" width="12" height="12" fill="black"/>"#,
        dx - 6.0,
        dy - 6.0
    );
    label(&mut out, dx, dy, "Depot");
    for s in instance.stations() {
        let (x, y) = frame.map(s.location);
        let _ = writeln!(
            out,
            r#"  <circle cx="{x:.2}" cy="{y:.2}" r="7" fill="white" stroke="black" stroke-width="2"/>"#
        );
        label(&mut out, x, y, &format!("S{}", s.id));
    }
    for c in instance.customers() {
        let (x, y) = frame.map(c.location);
        let _ = writeln!(
            out,
            r##"  <polygon points="{}" fill="#bbbbbb" stroke="black"/>"##,
            pentagon(x, y, 6.0)
        );
        label(&mut out, x, y, &format!("C{}", c.id));
    }
    out.push_str("  </g>\n</svg>\n");
    out
}
