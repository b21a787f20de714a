//! SVG rendering of node sets with optional line overlays.
//!
//! The viewport is the bounding box of the nodes grown by 10% on each side
//! (a degenerate extent is widened to 1). Geometry, including clipping of
//! lines to the viewport, is exact; conversion to pixels happens last with
//! fixed three-decimal formatting, so identical input gives identical bytes.
//!
//! Styling:
//! - nodes: black circles, radius 4
//! - maximal lines: red (`#d62728`), width 2
//! - used lines of the selected node: blue (`#1f77b4`), dashed, width 1.5
//! - selected node: gold fill with black outline, radius 6
//! - primary nodes: green fill (`#2ca02c`); secondary nodes: orange ring
//!   (`#ff7f0e`) drawn around the node

use std::collections::BTreeMap;
use std::fmt::Write;

use num_traits::{ToPrimitive, Zero};

use crate::gc::GCCertificate;
use crate::geom::{is_incident, Line, Point, Scalar};
use crate::gm::maximal_lines;
use crate::interp::NodeSet;
use crate::mdseq::greedy_mdseq;
use crate::error::Result;

const CANVAS: f64 = 600.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum NodeRole {
    Selected,
    Primary,
    Secondary,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Overlay {
    pub maximal_lines: Vec<Line>,
    pub used_lines: Vec<Line>,
    pub roles: BTreeMap<usize, NodeRole>,
}

impl Overlay {
    pub fn with_maximal_lines(mut self, xs: &NodeSet) -> Result<Self> {
        self.maximal_lines = maximal_lines(xs)?.into_keys().collect();
        Ok(self)
    }

    pub fn with_used_lines(mut self, cert: &GCCertificate, k: usize) -> Result<Self> {
        self.used_lines = cert.node(k)?.distinct_lines().into_iter().collect();
        self.roles.insert(k, NodeRole::Selected);
        Ok(self)
    }

    /// Primary/secondary coloring from the node's greedy m-line sequence.
    /// A node secondary for any line is drawn as secondary.
    pub fn with_roles(mut self, cert: &GCCertificate, k: usize) -> Result<Self> {
        let seq = greedy_mdseq(cert, k)?;
        self.roles.insert(k, NodeRole::Selected);
        for pos in 0..seq.lines.len() {
            for j in seq.secondary_nodes_of(pos) {
                self.roles.insert(j, NodeRole::Secondary);
            }
        }
        for (&j, _) in seq.primary.iter() {
            self.roles.entry(j).or_insert(NodeRole::Primary);
        }
        if self.used_lines.is_empty() {
            self.used_lines = seq.lines.clone();
        }
        Ok(self)
    }
}

struct Frame {
    min_x: Scalar,
    max_x: Scalar,
    min_y: Scalar,
    max_y: Scalar,
}

impl Frame {
    fn new(points: &[Point]) -> Self {
        let one = Scalar::from_integer(1.into());
        if points.is_empty() {
            return Frame {
                min_x: Scalar::zero(),
                max_x: one.clone(),
                min_y: Scalar::zero(),
                max_y: one,
            };
        }
        let min_x = points.iter().map(|p| &p.x).min().unwrap().clone();
        let max_x = points.iter().map(|p| &p.x).max().unwrap().clone();
        let min_y = points.iter().map(|p| &p.y).min().unwrap().clone();
        let max_y = points.iter().map(|p| &p.y).max().unwrap().clone();
        let widen = |lo: Scalar, hi: Scalar| {
            let mut w = &hi - &lo;
            if w.is_zero() {
                w = one.clone();
            }
            let m = w / Scalar::from_integer(10.into());
            (lo - &m, hi + m)
        };
        let (min_x, max_x) = widen(min_x, max_x);
        let (min_y, max_y) = widen(min_y, max_y);
        Frame {
            min_x,
            max_x,
            min_y,
            max_y,
        }
    }

    fn scale(&self) -> Scalar {
        let w = &self.max_x - &self.min_x;
        let h = &self.max_y - &self.min_y;
        Scalar::from_integer((CANVAS as i64).into()) / w.max(h)
    }

    fn size(&self) -> (f64, f64) {
        let s = self.scale();
        (
            ((&self.max_x - &self.min_x) * &s).to_f64().unwrap(),
            ((&self.max_y - &self.min_y) * &s).to_f64().unwrap(),
        )
    }

    fn pixel(&self, p: &Point) -> (f64, f64) {
        let s = self.scale();
        let px = ((&p.x - &self.min_x) * &s).to_f64().unwrap();
        let py = ((&self.max_y - &p.y) * &s).to_f64().unwrap();
        (px, py)
    }

    fn contains(&self, p: &Point) -> bool {
        p.x >= self.min_x && p.x <= self.max_x && p.y >= self.min_y && p.y <= self.max_y
    }

    /// The segment of `l` inside the frame, if any.
    fn clip(&self, l: &Line) -> Option<(Point, Point)> {
        let a = Scalar::from_integer(l.a().clone());
        let b = Scalar::from_integer(l.b().clone());
        let c = Scalar::from_integer(l.c().clone());
        let mut hits: Vec<Point> = Vec::new();
        if !b.is_zero() {
            for x in [&self.min_x, &self.max_x] {
                let y = -(&a * x + &c) / &b;
                hits.push(Point::new(x.clone(), y));
            }
        }
        if !a.is_zero() {
            for y in [&self.min_y, &self.max_y] {
                let x = -(&b * y + &c) / &a;
                hits.push(Point::new(x, y.clone()));
            }
        }
        hits.retain(|p| self.contains(p) && is_incident(p, l));
        hits.sort();
        hits.dedup();
        match (hits.first(), hits.last()) {
            (Some(p), Some(q)) if p != q => Some((p.clone(), q.clone())),
            _ => None,
        }
    }
}

fn line_element(out: &mut String, frame: &Frame, l: &Line, style: &str) {
    if let Some((p, q)) = frame.clip(l) {
        let (x1, y1) = frame.pixel(&p);
        let (x2, y2) = frame.pixel(&q);
        let _ = writeln!(
            out,
            r#"  <line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" {style}/>"#
        );
    }
}

pub fn plot_svg(xs: &NodeSet, overlay: &Overlay) -> String {
    let frame = Frame::new(xs.nodes());
    let (w, h) = frame.size();
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.3}" height="{h:.3}" viewBox="0 0 {w:.3} {h:.3}">"#
    );
    let _ = writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#);
    for l in &overlay.used_lines {
        line_element(
            &mut out,
            &frame,
            l,
            r##"stroke="#1f77b4" stroke-width="1.5" stroke-dasharray="6 4" class="used""##,
        );
    }
    for l in &overlay.maximal_lines {
        line_element(&mut out, &frame, l, r##"stroke="#d62728" stroke-width="2" class="maximal""##);
    }
    for (j, p) in xs.nodes().iter().enumerate() {
        let (cx, cy) = frame.pixel(p);
        let style = match overlay.roles.get(&j) {
            Some(NodeRole::Selected) => r##"r="6" fill="#ffd700" stroke="black" class="selected""##,
            Some(NodeRole::Primary) => r##"r="4" fill="#2ca02c" class="primary""##,
            Some(NodeRole::Secondary) => {
                r##"r="4" fill="black" stroke="#ff7f0e" stroke-width="3" class="secondary""##
            }
            None => r#"r="4" fill="black" class="node""#,
        };
        let _ = writeln!(out, r#"  <circle cx="{cx:.3}" cy="{cy:.3}" {style}><title>{j}</title></circle>"#);
    }
    out.push_str("</svg>\n");
    out
}
