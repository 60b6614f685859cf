//! SVG drawings of tessellations in the Poincaré disk.  Floating point is used
//! for layout only.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use num_traits::ToPrimitive;

use crate::error::Result;
use crate::moebius::{ExtendedRational, Geodesic, MoebiusMap};
use crate::tessellation::Tessellation;

const SIZE: f64 = 800.0;
const MARGIN: f64 = 10.0;
/// Edges whose chord is shorter than this fraction of the width are drawn
/// but not crossed.
const MIN_CHORD: f64 = 0.005;

/// Boundary angle of `p/q` under `z ↦ (z − i)/(z + i)`, which sends `0 → −1`
/// and `∞ → 1`.
fn angle(x: &ExtendedRational) -> f64 {
    let p = x.numer().to_f64().unwrap_or(f64::MAX);
    let q = x.denom().to_f64().unwrap_or(f64::MAX);
    -2.0 * q.atan2(p)
}

fn point(theta: f64) -> (f64, f64) {
    let r = SIZE / 2.0 - MARGIN;
    // screen y grows downward; flip so the upper half plane maps to the upper disk
    (SIZE / 2.0 + r * theta.cos(), SIZE / 2.0 - r * theta.sin())
}

fn chord(g: &Geodesic) -> f64 {
    let [a, b] = g.endpoints();
    let (p, q) = (point(angle(a)), point(angle(b)));
    ((p.0 - q.0).powi(2) + (p.1 - q.1).powi(2)).sqrt()
}

/// SVG path data for the geodesic: a circular arc orthogonal to the boundary,
/// or a diameter.
fn arc_path(g: &Geodesic) -> String {
    let [a, b] = g.endpoints();
    let (ta, tb) = (angle(a), angle(b));
    let (p, q) = (point(ta), point(tb));
    let half = ((tb - ta) / 2.0).rem_euclid(std::f64::consts::PI);
    let r = SIZE / 2.0 - MARGIN;
    if (half - std::f64::consts::FRAC_PI_2).abs() < 1e-9 {
        return format!("M {:.3} {:.3} L {:.3} {:.3}", p.0, p.1, q.0, q.1);
    }
    let radius = r * half.tan().abs();
    let c = (SIZE / 2.0, SIZE / 2.0);
    // the arc's center lies outside the disk on the bisector of the chord
    let mid = ((p.0 + q.0) / 2.0 - c.0, (p.1 + q.1) / 2.0 - c.1);
    let len = (mid.0 * mid.0 + mid.1 * mid.1).sqrt();
    let dist = (r * r + radius * radius).sqrt();
    let center = (c.0 + mid.0 / len * dist, c.1 + mid.1 / len * dist);
    let cross = (p.0 - center.0) * (q.1 - center.1) - (p.1 - center.1) * (q.0 - center.0);
    let sweep = u8::from(cross > 0.0);
    format!("M {:.3} {:.3} A {:.3} {:.3} 0 0 {} {:.3} {:.3}", p.0, p.1, radius, radius, sweep, q.0, q.1)
}

/// Edges of `t` reached from the triangle to the right of the distinguished
/// edge by crossing at most `depth` edges, each with its orbit label.
pub fn visible_edges(t: &Tessellation, depth: usize) -> Vec<(Geodesic, usize)> {
    let darts = t.darts();
    let (d0, k0) = t.locate(t.distinguished()).expect("distinguished edge is an edge");
    let mut seen: HashSet<Geodesic> = HashSet::new();
    let mut out = Vec::new();
    let triangle = |d: usize, k: &MoebiusMap| {
        let n = darts[d].next;
        let nn = darts[n].next;
        let kn = k.compose(&darts[d].next_glue);
        let knn = kn.compose(&darts[n].next_glue);
        [(d, k.clone()), (n, kn), (nn, knn)]
    };
    let mut frontier = Vec::new();
    for (d, k) in triangle(d0, &k0) {
        let g = k.apply_geodesic(&darts[d].lift.unoriented());
        if seen.insert(g.clone()) {
            out.push((g.clone(), t.label_of_dart(d)));
        }
        frontier.push((d, k, g));
    }
    for _ in 0..depth {
        let mut next = Vec::new();
        for (d, k, g) in frontier {
            if chord(&g) < MIN_CHORD * SIZE {
                continue;
            }
            let o = darts[d].opp;
            let ko = k.compose(&darts[d].opp_glue);
            for (e, ke) in triangle(o, &ko).into_iter().skip(1) {
                let h = ke.apply_geodesic(&darts[e].lift.unoriented());
                if seen.insert(h.clone()) {
                    out.push((h.clone(), t.label_of_dart(e)));
                    next.push((e, ke, h));
                }
            }
        }
        frontier = next;
    }
    out
}

/// A deterministic SVG drawing of `t`, with the distinguished edge highlighted.
pub fn render_svg(t: &Tessellation, depth: usize) -> String {
    let mut s = String::new();
    let c = SIZE / 2.0;
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ =
        writeln!(s, r##"<circle cx="{c}" cy="{c}" r="{}" fill="none" stroke="#000" stroke-width="1.5"/>"##, c - MARGIN);
    let distinguished = t.distinguished().unoriented();
    for (g, label) in visible_edges(t, depth) {
        if g == distinguished {
            continue;
        }
        let _ = writeln!(
            s,
            r##"<path d="{}" fill="none" stroke="#335" stroke-width="0.8" data-orbit="{label}" data-edge="{g}"/>"##,
            arc_path(&g)
        );
    }
    let _ = writeln!(
        s,
        r##"<path d="{}" fill="none" stroke="#c22" stroke-width="2.5" data-distinguished="{}"/>"##,
        arc_path(&distinguished),
        t.distinguished()
    );
    s.push_str("</svg>\n");
    s
}

pub fn write_svg(t: &Tessellation, depth: usize, out: &Path) -> Result<()> {
    std::fs::write(out, render_svg(t, depth))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subgroup::Subgroup;

    fn paths(svg: &str) -> Vec<String> {
        let doc = roxmltree::Document::parse(svg).unwrap();
        doc.descendants()
            .filter(|n| n.has_tag_name("path"))
            .map(|n| n.attribute("data-edge").or(n.attribute("data-distinguished")).unwrap().to_string())
            .collect()
    }

    #[test]
    fn base_triangle_at_depth_zero() {
        let t = Tessellation::farey(&Subgroup::congruence(2).unwrap());
        let svg = render_svg(&t, 0);
        let p = paths(&svg);
        assert_eq!(p.len(), 3);
        assert!(p.contains(&"0/1->1/0".to_string()));
        assert!(p.contains(&"0/1..1/1".to_string()) && p.contains(&"1/1..1/0".to_string()));
    }

    #[test]
    fn deterministic_and_valid() {
        let t = Tessellation::farey(&Subgroup::congruence(3).unwrap()).flip_sequence(&[1, 4]).unwrap();
        let a = render_svg(&t, 5);
        assert_eq!(a, render_svg(&t, 5));
        assert!(paths(&a).len() > 20);
    }

    #[test]
    fn flip_changes_only_the_flipped_orbit() {
        let t = Tessellation::farey(&Subgroup::congruence(2).unwrap());
        let l = t.edge_orbit_of(&"0..1".parse().unwrap()).unwrap();
        let f = t.flip(l).unwrap().0;
        let before: HashSet<(Geodesic, usize)> = visible_edges(&t, 4).into_iter().collect();
        let after: HashSet<(Geodesic, usize)> = visible_edges(&f, 4).into_iter().collect();
        assert!(before.iter().any(|(g, m)| *m == l && !f.contains_edge(g)));
        assert!(after.iter().any(|(g, m)| *m == l && !t.contains_edge(g)));
        for (g, m) in &after {
            if *m != l {
                assert!(t.contains_edge(g), "{g}");
            }
        }
    }

    #[test]
    fn arcs_are_orthogonal_to_the_boundary() {
        let g: Geodesic = "1..2".parse().unwrap();
        let d = arc_path(&g);
        let nums: Vec<f64> = d.split_whitespace().filter_map(|w| w.parse().ok()).collect();
        let (r_arc, r) = (nums[2], SIZE / 2.0 - MARGIN);
        let [a, b] = g.endpoints();
        let (p, q) = (point(angle(a)), point(angle(b)));
        // orthogonal circles: center distance² = r² + r_arc²
        let mid = ((p.0 + q.0) / 2.0, (p.1 + q.1) / 2.0);
        let half = ((p.0 - q.0).powi(2) + (p.1 - q.1).powi(2)).sqrt() / 2.0;
        let to_center = (r_arc * r_arc - half * half).sqrt();
        let m = ((mid.0 - SIZE / 2.0).powi(2) + (mid.1 - SIZE / 2.0).powi(2)).sqrt();
        assert!(((m + to_center) - (r * r + r_arc * r_arc).sqrt()).abs() < 1e-2);
        assert_eq!(angle(&ExtendedRational::zero()).abs(), std::f64::consts::PI);
        assert_eq!(angle(&ExtendedRational::infinity()), 0.0);
    }
}
