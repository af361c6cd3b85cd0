//! Deterministic SVG rendering of real points, lines and conics.

use std::fmt::Write;

use nalgebra::{Matrix2, Vector2};

pub type V3 = [f64; 3];

const PALETTE: [&str; 6] = ["#1f5fa8", "#b8412c", "#2c8a4b", "#7a4fa3", "#a87a1f", "#444444"];

/// Conic as the upper triangle `[a, b, c, d, e, f]` of its symmetric matrix.
pub type Sym = [f64; 6];

#[derive(Clone, Debug, Default)]
pub struct Scene {
    pub points: Vec<V3>,
    /// Lines with a color group.
    pub lines: Vec<(V3, usize)>,
    pub conics: Vec<(Sym, usize)>,
}

/// Square window `[-half, half]²` drawn at `pixels` × `pixels`.
#[derive(Clone, Copy, Debug)]
pub struct Viewport {
    pub half: f64,
    pub pixels: u32,
}

impl Default for Viewport {
    fn default() -> Self {
        Viewport { half: 2.5, pixels: 800 }
    }
}

impl Viewport {
    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        let s = self.pixels as f64 / (2.0 * self.half);
        ((x + self.half) * s, (self.half - y) * s)
    }
}

/// Segment of `ax + by + c = 0` inside the window.
fn clip_line(l: &V3, vp: &Viewport) -> Option<[(f64, f64); 2]> {
    let [a, b, c] = *l;
    let h = vp.half;
    let mut hits: Vec<(f64, f64)> = Vec::new();
    if b.abs() > 1e-14 {
        for x in [-h, h] {
            let y = -(a * x + c) / b;
            if y.abs() <= h + 1e-12 {
                hits.push((x, y));
            }
        }
    }
    if a.abs() > 1e-14 {
        for y in [-h, h] {
            let x = -(b * y + c) / a;
            if x.abs() <= h + 1e-12 {
                hits.push((x, y));
            }
        }
    }
    hits.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.total_cmp(&q.1)));
    hits.dedup_by(|p, q| (p.0 - q.0).abs() < 1e-12 && (p.1 - q.1).abs() < 1e-12);
    match hits.as_slice() {
        [p, .., q] => Some([*p, *q]),
        _ => None,
    }
}

/// Up to two polylines tracing the real affine part of a conic, 128 samples
/// in total.
pub fn sample_conic(s: &Sym, vp: &Viewport) -> Vec<Vec<(f64, f64)>> {
    let [a, b, c, d, e, f] = *s;
    let m = Matrix2::new(a, b, b, d);
    let g = Vector2::new(c, e);
    let scale = s.iter().fold(0.0f64, |x, y| x.max(y.abs()));
    if scale == 0.0 {
        return Vec::new();
    }
    let eig = m.symmetric_eigen();
    let (l0, l1) = (eig.eigenvalues[0], eig.eigenvalues[1]);
    let (v0, v1) = (eig.eigenvectors.column(0).into_owned(), eig.eigenvectors.column(1).into_owned());
    let reach = 4.0 * vp.half;
    if l0.abs().min(l1.abs()) > 1e-12 * scale {
        let center = -(m.try_inverse().expect("nonsingular") * g);
        let k = f + g.dot(&center);
        if k.abs() < 1e-14 * scale {
            return Vec::new();
        }
        let (p, q) = (-l0 / k, -l1 / k);
        let at = |u: f64, w: f64| {
            let v = center + v0 * u + v1 * w;
            (v[0], v[1])
        };
        if p > 0.0 && q > 0.0 {
            let mut pts: Vec<(f64, f64)> = (0..=128)
                .map(|i| {
                    let t = std::f64::consts::TAU * i as f64 / 128.0;
                    at(t.cos() / p.sqrt(), t.sin() / q.sqrt())
                })
                .collect();
            pts.pop();
            pts.push(pts[0]);
            return vec![pts];
        }
        if p < 0.0 && q < 0.0 {
            return Vec::new();
        }
        // Hyperbola: the positive direction carries cosh.
        let (pos, neg, swap) = if p > 0.0 { (p, -q, false) } else { (q, -p, true) };
        let smax = (reach * neg.sqrt()).asinh();
        let branch = |sign: f64| -> Vec<(f64, f64)> {
            (0..64)
                .map(|i| {
                    let s = -smax + 2.0 * smax * i as f64 / 63.0;
                    let (u, w) = (sign * s.cosh() / pos.sqrt(), s.sinh() / neg.sqrt());
                    if swap {
                        at(w, u)
                    } else {
                        at(u, w)
                    }
                })
                .collect()
        };
        return vec![branch(1.0), branch(-1.0)];
    }
    // Parabola: λ s² + 2(g·v)s + 2(g·u)t + f = 0 along eigenvectors v, u.
    let (lam, v, u) = if l0.abs() > l1.abs() { (l0, v0, v1) } else { (l1, v1, v0) };
    let gu = g.dot(&u);
    if gu.abs() < 1e-14 * scale {
        return Vec::new();
    }
    let gv = g.dot(&v);
    let pts = (0..128)
        .map(|i| {
            let s = -reach + 2.0 * reach * i as f64 / 127.0;
            let t = -(lam * s * s + 2.0 * gv * s + f) / (2.0 * gu);
            let p = v * s + u * t;
            (p[0], p[1])
        })
        .collect();
    vec![pts]
}

fn coord(x: f64) -> String {
    // Clamp far-away samples; the viewBox clips them anyway.
    let x = x.clamp(-1e5, 1e5);
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

pub fn render(scene: &Scene, vp: &Viewport) -> String {
    let n = vp.pixels;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{n}" height="{n}" viewBox="0 0 {n} {n}">"#
    );
    let _ = writeln!(out, r#"<rect width="{n}" height="{n}" fill="white"/>"#);
    let (ox, oy) = vp.px(0.0, 0.0);
    let _ = writeln!(
        out,
        r##"<g stroke="#cccccc" stroke-width="0.5"><line x1="0" y1="{oy}" x2="{n}" y2="{oy}"/><line x1="{ox}" y1="0" x2="{ox}" y2="{n}"/></g>"##,
        ox = coord(ox),
        oy = coord(oy)
    );
    let _ = writeln!(out, r#"<g fill="none" stroke-width="1">"#);
    for (l, grp) in &scene.lines {
        if let Some([p, q]) = clip_line(l, vp) {
            let (a, b) = vp.px(p.0, p.1);
            let (c, d) = vp.px(q.0, q.1);
            let _ = writeln!(
                out,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}"/>"#,
                coord(a),
                coord(b),
                coord(c),
                coord(d),
                PALETTE[grp % PALETTE.len()]
            );
        }
    }
    for (s, grp) in &scene.conics {
        for poly in sample_conic(s, vp) {
            let pts: Vec<String> = poly
                .iter()
                .map(|&(x, y)| {
                    let (a, b) = vp.px(x, y);
                    format!("{},{}", coord(a), coord(b))
                })
                .collect();
            let _ = writeln!(out, r#"<polyline points="{}" stroke="{}"/>"#, pts.join(" "), PALETTE[grp % PALETTE.len()]);
        }
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<g fill="black">"#);
    for p in &scene.points {
        if p[2].abs() < 1e-12 * (p[0].abs() + p[1].abs()) {
            continue;
        }
        let (a, b) = vp.px(p[0] / p[2], p[1] / p[2]);
        let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="3"/>"#, coord(a), coord(b));
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_scene_has_axes_only() {
        let s = render(&Scene::default(), &Viewport::default());
        assert!(s.starts_with("<?xml") && s.ends_with("</svg>\n"));
        assert_eq!(s.matches("<line").count(), 2);
        assert!(!s.contains("<circle") && !s.contains("<polyline"));
    }

    #[test]
    fn lines_are_clipped_to_the_window() {
        let vp = Viewport { half: 1.0, pixels: 100 };
        let [p, q] = clip_line(&[1.0, -1.0, 0.0], &vp).unwrap();
        assert_eq!((p, q), ((-1.0, -1.0), (1.0, 1.0)));
        assert!(clip_line(&[1.0, 0.0, -5.0], &vp).is_none());
        // The line at infinity has no affine part.
        assert!(clip_line(&[0.0, 0.0, 1.0], &vp).is_none());
    }

    #[test]
    fn unit_circle_samples_lie_on_it() {
        let polys = sample_conic(&[1.0, 0.0, 0.0, 1.0, 0.0, -1.0], &Viewport::default());
        assert_eq!(polys.len(), 1);
        assert_eq!(polys[0].len(), 129);
        assert!(polys[0].iter().all(|(x, y)| (x * x + y * y - 1.0).abs() < 1e-12));
    }

    #[test]
    fn hyperbola_and_parabola_samples_satisfy_the_equation() {
        let vp = Viewport::default();
        for s in [[1.0, 0.0, 0.0, -1.0, 0.0, -1.0], [1.0, 0.5, 0.2, -2.0, 0.1, -0.3], [1.0, 0.0, 0.0, 0.0, -0.5, 0.0]] {
            let polys = sample_conic(&s, &vp);
            assert!(!polys.is_empty());
            assert_eq!(polys.iter().map(|p| p.len()).sum::<usize>(), 128);
            for &(x, y) in polys.iter().flatten() {
                let v = s[0] * x * x + 2.0 * s[1] * x * y + 2.0 * s[2] * x + s[3] * y * y + 2.0 * s[4] * y + s[5];
                assert!(v.abs() < 1e-6 * (1.0 + x * x + y * y), "{s:?} at ({x}, {y}): {v}");
            }
        }
    }

    #[test]
    fn output_is_deterministic() {
        let scene = Scene {
            points: vec![[0.5, 0.5, 1.0], [1.0, 0.0, 0.0]],
            lines: vec![([1.0, 2.0, -1.0], 0), ([0.0, 1.0, 0.3], 1)],
            conics: vec![([1.0, 0.0, 0.0, 2.0, 0.0, -1.0], 2)],
        };
        let vp = Viewport::default();
        assert_eq!(render(&scene, &vp), render(&scene, &vp));
        // The point at infinity is not drawn.
        assert_eq!(render(&scene, &vp).matches("<circle").count(), 1);
    }
}
