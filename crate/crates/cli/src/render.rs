//! Static SVG drawing: lines, vertices, chamber labels at their witnesses
//! and the flag. Floating point is used for layout only.

use std::fmt::Write as _;

use chambercoh::arith::approx_f64;
use chambercoh::complex::Analysis;

const CANVAS: f64 = 800.0;
const PAD: f64 = 40.0;

struct View {
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
    scale: f64,
}

impl View {
    fn fit(points: &[(f64, f64)]) -> View {
        let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for &(x, y) in points {
            x0 = x0.min(x);
            y0 = y0.min(y);
            x1 = x1.max(x);
            y1 = y1.max(y);
        }
        let margin = 1.0 + 0.1 * (x1 - x0).max(y1 - y0);
        let (x0, y0, x1, y1) = (x0 - margin, y0 - margin, x1 + margin, y1 + margin);
        let scale = (CANVAS - 2.0 * PAD) / (x1 - x0).max(y1 - y0);
        View { x0, y0, x1, y1, scale }
    }

    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        (PAD + (x - self.x0) * self.scale, CANVAS - PAD - (y - self.y0) * self.scale)
    }

    /// Endpoints of `a·x + b·y + c = 0` inside the view box.
    fn clip(&self, a: f64, b: f64, c: f64) -> Option<((f64, f64), (f64, f64))> {
        let mut pts = Vec::new();
        if b != 0.0 {
            for x in [self.x0, self.x1] {
                let y = -(a * x + c) / b;
                if (self.y0..=self.y1).contains(&y) {
                    pts.push((x, y));
                }
            }
        }
        if a != 0.0 {
            for y in [self.y0, self.y1] {
                let x = -(b * y + c) / a;
                if (self.x0..=self.x1).contains(&x) {
                    pts.push((x, y));
                }
            }
        }
        pts.sort_by(|p, q| p.partial_cmp(q).expect("finite"));
        Some((*pts.first()?, *pts.last()?))
    }
}

pub fn render_svg(a: &Analysis) -> String {
    let arr = &a.arrangement;
    let vertices: Vec<(f64, f64)> = arr
        .intersection_points()
        .iter()
        .map(|p| (approx_f64(&p.x), approx_f64(&p.y)))
        .collect();
    let witnesses: Vec<(f64, f64)> = a
        .chambers
        .chambers()
        .iter()
        .map(|c| (approx_f64(&c.witness.0), approx_f64(&c.witness.1)))
        .collect();
    let (f0x, f0y) = a.flag.f0();
    let f0 = (approx_f64(&f0x), approx_f64(&f0y));
    let mut all = vertices.clone();
    all.extend(&witnesses);
    all.push(f0);
    let view = View::fit(&all);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<title>{}</title>"#, arr.name());

    let slope = approx_f64(&a.flag.slope);
    let offset = approx_f64(&a.flag.offset);
    if let Some((p, q)) = view.clip(-slope, 1.0, -offset) {
        let (p, q) = (view.px(p.0, p.1), view.px(q.0, q.1));
        let _ = writeln!(
            s,
            r##"<line class="flag" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#888" stroke-dasharray="6 4"/>"##,
            p.0, p.1, q.0, q.1
        );
    }
    let (fx, fy) = view.px(f0.0, f0.1);
    let _ = writeln!(s, r##"<rect class="f0" x="{:.2}" y="{:.2}" width="8" height="8" fill="#888"/>"##, fx - 4.0, fy - 4.0);

    for (i, l) in arr.lines().iter().enumerate() {
        let (la, lb, lc) = (
            approx_f64(&l.a().clone().into()),
            approx_f64(&l.b().clone().into()),
            approx_f64(&l.c().clone().into()),
        );
        if let Some((p, q)) = view.clip(la, lb, lc) {
            let (p, q) = (view.px(p.0, p.1), view.px(q.0, q.1));
            let _ = writeln!(
                s,
                r#"<line class="hyperplane" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black" stroke-width="1.5"><title>H{}: {l}</title></line>"#,
                p.0, p.1, q.0, q.1, i + 1
            );
            let _ = writeln!(s, r#"<text class="line-label" x="{:.2}" y="{:.2}" font-size="14">H{}</text>"#,
                (q.0 + 4.0).clamp(4.0, CANVAS - 28.0),
                (q.1 - 4.0).clamp(16.0, CANVAS - 4.0),
                i + 1
            );
        }
    }
    for (p, v) in arr.intersection_points().iter().zip(&vertices) {
        let (x, y) = view.px(v.0, v.1);
        let _ = writeln!(s, r#"<circle class="vertex" cx="{x:.2}" cy="{y:.2}" r="4" fill="black"><title>{p}</title></circle>"#);
    }
    for (i, (c, w)) in a.chambers.chambers().iter().zip(&witnesses).enumerate() {
        let (x, y) = view.px(w.0, w.1);
        let _ = writeln!(
            s,
            r##"<text class="chamber" x="{x:.2}" y="{y:.2}" font-size="12" fill="#1f4e9c" text-anchor="middle">c{i}<title>{} {}</title></text>"##,
            c.sign,
            c.kind()
        );
    }
    s.push_str("</svg>\n");
    s
}
