//! SVG drawing of the regions of a two-variable Newton polyhedron.
//!
//! The picture shows `[0, M+1]^2` with the y axis pointing up. There are four
//! layers, always present and always in this order: `conv`, `pyr`, `out`, `bd`.

use std::fmt::Write;

use jmult::dual::inequalities_to_vertices;
use jmult::geometry::{Hyperplane, Rational, RationalVector};
use jmult::newton::NewtonData;
use jmult::volume::{default_box_side, out_region_piece};
use num_traits::ToPrimitive;

use crate::error::CliError;

pub const LAYERS: [&str; 4] = ["conv", "pyr", "out", "bd"];

fn coords(p: &[Rational]) -> (f64, f64) {
    (p[0].to_f64().unwrap_or(0.0), p[1].to_f64().unwrap_or(0.0))
}

/// Vertices of a convex polygon in counter-clockwise order.
fn cyclic(points: &[RationalVector]) -> Vec<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> = points.iter().map(|p| coords(p)).collect();
    let n = pts.len() as f64;
    let (cx, cy) = pts
        .iter()
        .fold((0.0, 0.0), |(a, b), (x, y)| (a + x / n, b + y / n));
    pts.sort_by(|a, b| {
        let ta = (a.1 - cy).atan2(a.0 - cx);
        let tb = (b.1 - cy).atan2(b.0 - cx);
        ta.total_cmp(&tb)
    });
    pts
}

fn points_attr(pts: &[(f64, f64)]) -> String {
    pts.iter()
        .map(|(x, y)| format!("{x:.4},{y:.4}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn polygon(out: &mut String, pts: &[(f64, f64)]) {
    if pts.len() >= 3 {
        let _ = writeln!(out, "    <polygon points=\"{}\"/>", points_attr(pts));
    }
}

pub fn render_svg(nd: &NewtonData) -> Result<String, CliError> {
    if nd.dim() != 2 {
        return Err(CliError::Unsupported(format!(
            "plot needs two variables, got {}",
            nd.dim()
        )));
    }
    let side = default_box_side(nd) + 1;
    let stroke = side as f64 / 200.0;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {side} {side}\" width=\"480\" height=\"480\">"
    );
    let _ = writeln!(svg, "  <g transform=\"translate(0,{side}) scale(1,-1)\">");

    let _ = writeln!(svg, "  <g id=\"conv\" fill=\"#d9e6f2\" stroke=\"none\">");
    if !nd.is_unit() {
        let mut ineqs: Vec<Hyperplane> = nd.facets().iter().map(|f| f.hyperplane.clone()).collect();
        for k in 0..2 {
            let mut e = vec![0, 0];
            e[k] = -1;
            ineqs.push(Hyperplane::from_i64(
                &e,
                Rational::from_integer((-side).into()),
            )?);
        }
        polygon(&mut svg, &cyclic(&inequalities_to_vertices(&ineqs, 2)?));
    }
    svg.push_str("  </g>\n");

    let _ = writeln!(
        svg,
        "  <g id=\"pyr\" fill=\"#f2c57c\" fill-opacity=\"0.8\" stroke=\"none\">"
    );
    for f in nd.bounded_facets() {
        let mut tri = nd.facet_vertices(f);
        tri.push(vec![Rational::from_integer(0.into()); 2]);
        polygon(&mut svg, &cyclic(&tri));
    }
    svg.push_str("  </g>\n");

    let _ = writeln!(
        svg,
        "  <g id=\"out\" fill=\"#c0504d\" fill-opacity=\"0.6\" stroke=\"none\">"
    );
    for (k, f) in nd.facets().iter().enumerate() {
        if f.bounded {
            polygon(&mut svg, &cyclic(&out_region_piece(nd, k)?));
        }
    }
    svg.push_str("  </g>\n");

    let _ = writeln!(
        svg,
        "  <g id=\"bd\" fill=\"none\" stroke=\"#1f3a5f\" stroke-width=\"{stroke:.4}\">"
    );
    let mut bd: Vec<(f64, f64)> = Vec::new();
    for f in nd.bounded_facets() {
        for p in nd.facet_vertices(f) {
            let c = coords(&p);
            if !bd.contains(&c) {
                bd.push(c);
            }
        }
    }
    bd.sort_by(|a, b| a.0.total_cmp(&b.0));
    if bd.len() >= 2 {
        let _ = writeln!(svg, "    <polyline points=\"{}\"/>", points_attr(&bd));
    }
    svg.push_str("  </g>\n");

    svg.push_str("  </g>\n</svg>\n");
    Ok(svg)
}
