//! SVG drawing of a cactus: lobes as circles, tangent at intersection points.
//! Floats appear only here.

use std::f64::consts::PI;
use std::fmt::Write;

use anyhow::Result;
use cacti::cacti::{associated_tree, CactusVertex, FmsElement, LabeledPartition};
use cacti::operad::Tree;

struct Circle {
    label: usize,
    cx: f64,
    cy: f64,
    r: f64,
    /// Angle of the lobe coordinate 0.
    base: f64,
}

struct Layout<'a> {
    p: &'a LabeledPartition,
    circles: Vec<Circle>,
}

fn radius(p: &LabeledPartition, j: usize) -> f64 {
    30.0 + 90.0 * p.label_length(j).to_f64()
}

impl Layout<'_> {
    fn angle_on(&self, c: &Circle, t: &cacti::Rat) -> Result<f64> {
        let x = self.p.coordinate_map(c.label)?.eval(t);
        Ok(c.base + 2.0 * PI * x.coordinate().to_f64())
    }

    /// Lobes hanging from the point `(x, y)`, fanned around direction `dir`.
    fn hang(&mut self, x: f64, y: f64, dir: f64, lobes: &[Tree<CactusVertex>]) -> Result<()> {
        let k = lobes.len();
        for (i, sub) in lobes.iter().enumerate() {
            let psi = if k == 1 {
                dir
            } else {
                dir + (i as f64 - (k as f64 - 1.0) / 2.0) * (PI / 2.0) / (k as f64 - 1.0)
            };
            self.lobe(sub, x, y, psi)?;
        }
        Ok(())
    }

    fn lobe(&mut self, t: &Tree<CactusVertex>, x: f64, y: f64, dir: f64) -> Result<()> {
        let Tree::Node {
            label: CactusVertex::Lobe { label },
            children,
        } = t
        else {
            anyhow::bail!("malformed cactus tree");
        };
        let r = radius(self.p, *label);
        let c = Circle {
            label: *label,
            cx: x + r * dir.cos(),
            cy: y + r * dir.sin(),
            r,
            base: dir + PI,
        };
        let mut hangs = Vec::new();
        for w in children {
            if let Tree::Node {
                label: CactusVertex::Intersection { breakpoints },
                children: lobes,
            } = w
            {
                let phi = self.angle_on(&c, &self.p.breaks()[breakpoints[0]])?;
                hangs.push((c.cx + r * phi.cos(), c.cy + r * phi.sin(), phi, lobes));
            }
        }
        self.circles.push(c);
        for (px, py, phi, lobes) in hangs {
            self.hang(px, py, phi, lobes)?;
        }
        Ok(())
    }
}

fn place(p: &LabeledPartition) -> Result<Layout<'_>> {
    let tree = associated_tree(p)?;
    let mut layout = Layout {
        p,
        circles: Vec::new(),
    };
    match &tree {
        Tree::Node {
            label: CactusVertex::Intersection { .. },
            children,
        } => layout.hang(0.0, 0.0, -PI / 2.0, children)?,
        t => layout.lobe(t, 0.0, 0.0, -PI / 2.0)?,
    }
    Ok(layout)
}

fn f(x: f64) -> String {
    format!("{x:.3}")
}

/// Deterministic SVG picture of `e`. The global basepoint is a filled dot,
/// framing offsets are small open dots.
pub fn render_svg(e: &FmsElement) -> Result<String> {
    let Some(p) = e.partition() else {
        return Ok(concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-10 -10 20 20\">\n",
            "  <circle cx=\"0\" cy=\"0\" r=\"3\" fill=\"black\"/>\n",
            "</svg>\n"
        )
        .to_string());
    };
    let layout = place(p)?;

    let first = p.labels()[0];
    let root = layout
        .circles
        .iter()
        .find(|c| c.label == first)
        .ok_or_else(|| anyhow::anyhow!("lobe {first} was not placed"))?;
    let a = layout.angle_on(root, &cacti::Rat::zero())?;
    let base = (root.cx + root.r * a.cos(), root.cy + root.r * a.sin());

    let pad = 12.0;
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for c in &layout.circles {
        x0 = x0.min(c.cx - c.r);
        y0 = y0.min(c.cy - c.r);
        x1 = x1.max(c.cx + c.r);
        y1 = y1.max(c.cy + c.r);
    }
    let mut s = String::new();
    writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">",
        f(x0 - pad),
        f(-(y1 + pad)),
        f(x1 - x0 + 2.0 * pad),
        f(y1 - y0 + 2.0 * pad)
    )?;
    // math orientation: flip y so counterclockwise reads counterclockwise
    writeln!(s, "  <g transform=\"scale(1,-1)\">")?;
    for c in &layout.circles {
        writeln!(
            s,
            "    <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"black\"/>",
            f(c.cx),
            f(c.cy),
            f(c.r)
        )?;
        if !e.is_spineless() {
            let z = e.offsets()[c.label - 1].coordinate().to_f64();
            let phi = c.base - 2.0 * PI * z;
            writeln!(
                s,
                "    <circle class=\"offset\" cx=\"{}\" cy=\"{}\" r=\"2.5\" fill=\"white\" stroke=\"red\"/>",
                f(c.cx + c.r * phi.cos()),
                f(c.cy + c.r * phi.sin())
            )?;
        }
    }
    writeln!(
        s,
        "    <circle class=\"basepoint\" cx=\"{}\" cy=\"{}\" r=\"3.5\" fill=\"black\"/>",
        f(base.0),
        f(base.1)
    )?;
    writeln!(s, "  </g>")?;
    for c in &layout.circles {
        writeln!(
            s,
            "  <text x=\"{}\" y=\"{}\" text-anchor=\"middle\" dominant-baseline=\"middle\">{}</text>",
            f(c.cx),
            f(-c.cy),
            c.label
        )?;
    }
    writeln!(s, "</svg>")?;
    Ok(s)
}

/// Centres of the drawn lobes by label, for layout checks.
pub fn lobe_centres(e: &FmsElement) -> Result<Vec<(usize, f64, f64, f64)>> {
    let Some(p) = e.partition() else {
        return Ok(Vec::new());
    };
    let layout = place(p)?;
    let mut out: Vec<_> = layout
        .circles
        .iter()
        .map(|c| (c.label, c.cx, c.cy, c.r))
        .collect();
    out.sort_by_key(|c| c.0);
    Ok(out)
}
