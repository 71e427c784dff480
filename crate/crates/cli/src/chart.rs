//! Charts of a page: columns s, rows t, one glyph per basis class.

use rcyclo_core::specseq::taxonomy::classify;
use rcyclo_core::specseq::{shift, ClassColor, Page};
use rcyclo_core::Tridegree;
use std::collections::BTreeMap;
use std::fmt::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChartFormat {
    Ascii,
    Svg,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartClass {
    pub s: i64,
    pub t: i64,
    pub color: ClassColor,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartArrow {
    pub r: u32,
    pub from: (i64, i64),
    pub to: (i64, i64),
    pub color: ClassColor,
}

/// Everything a renderer needs; built deterministically from a page at one weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartSpec {
    pub presentation: String,
    pub page: u32,
    pub weight: i64,
    pub s: (i64, i64),
    pub t: (i64, i64),
    pub classes: Vec<ChartClass>,
    pub arrows: Vec<ChartArrow>,
}

impl ChartSpec {
    pub fn from_page(page: &Page, weight: i64) -> Self {
        let pres = &page.presentation;
        let mut classes = Vec::new();
        let mut colors: BTreeMap<(Tridegree, usize), ClassColor> = BTreeMap::new();
        for (&d, pc) in &page.pieces {
            if d.w != weight {
                continue;
            }
            for (i, rep) in pc.reps.iter().enumerate() {
                // a sum of monomials is coloured by its first term
                let lead = rep.iter().position(|&c| c != 0).map(|k| &pc.ambient[k]);
                let color = lead.map_or(ClassColor::Black, |m| classify(pres, m));
                let label = page.describe(d).get(i).cloned().unwrap_or_default();
                colors.insert((d, i), color);
                classes.push(ChartClass { s: d.s, t: d.t, color, label });
            }
        }
        let mut arrows = Vec::new();
        for (&d, m) in &page.differential {
            if d.w != weight {
                continue;
            }
            let tgt = d + shift(page.r);
            for j in 0..m.ncols {
                if (0..m.nrows).any(|i| m.get(i, j) != 0) {
                    arrows.push(ChartArrow {
                        r: page.r,
                        from: (d.s, d.t),
                        to: (tgt.s, tgt.t),
                        color: colors.get(&(d, j)).copied().unwrap_or(ClassColor::Black),
                    });
                }
            }
        }
        ChartSpec {
            presentation: pres.name.clone(),
            page: page.r,
            weight,
            s: page.window.s,
            t: page.window.t,
            classes,
            arrows,
        }
    }

    fn cells(&self) -> BTreeMap<(i64, i64), Vec<&ChartClass>> {
        let mut out: BTreeMap<(i64, i64), Vec<&ChartClass>> = BTreeMap::new();
        for c in &self.classes {
            out.entry((c.s, c.t)).or_default().push(c);
        }
        out
    }

    pub fn ascii(&self) -> String {
        let mut out = format!("E{} of {} at w = {}\n", self.page, self.presentation, self.weight);
        if self.classes.is_empty() {
            out.push_str("(empty)\n");
            return out;
        }
        let cells = self.cells();
        let (s0, s1) = self.s;
        let widths: Vec<usize> = (s0..=s1)
            .map(|s| {
                let glyphs = (self.t.0..=self.t.1).map(|t| cells.get(&(s, t)).map_or(0, |v| v.len())).max().unwrap_or(0);
                glyphs.max(s.to_string().len()).max(1)
            })
            .collect();
        let label_width = self.t.0.to_string().len().max(self.t.1.to_string().len());
        for t in (self.t.0..=self.t.1).rev() {
            let mut line = format!("{t:>label_width$} |");
            for (k, s) in (s0..=s1).enumerate() {
                let cell: String = cells.get(&(s, t)).map_or(String::new(), |v| v.iter().map(|c| c.color.letter()).collect());
                let cell = if cell.is_empty() { ".".to_string() } else { cell };
                let _ = write!(line, " {cell:>w$}", w = widths[k]);
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        let rule: usize = widths.iter().map(|w| w + 1).sum();
        let _ = writeln!(out, "{:>label_width$} +{}", "", "-".repeat(rule));
        let mut axis = format!("{:>label_width$}  ", "");
        for (k, s) in (s0..=s1).enumerate() {
            let _ = write!(axis, " {s:>w$}", w = widths[k]);
        }
        out.push_str(axis.trim_end());
        out.push('\n');
        let _ = writeln!(out, "s across, t up; B black, G green, R red; {} classes", self.classes.len());
        for a in &self.arrows {
            let _ = writeln!(out, "d{} {} ({}, {}) -> ({}, {})", a.r, a.color.letter(), a.from.0, a.from.1, a.to.0, a.to.1);
        }
        out
    }

    pub fn svg(&self) -> String {
        const CELL: i64 = 28;
        const PAD: i64 = 40;
        let (s0, s1) = self.s;
        let (t0, t1) = self.t;
        let ncols = (s1 - s0 + 1).max(0);
        let nrows = (t1 - t0 + 1).max(0);
        let width = 2 * PAD + ncols * CELL;
        let height = 2 * PAD + nrows * CELL;
        let x = |s: i64| PAD + (s - s0) * CELL + CELL / 2;
        let y = |t: i64| PAD + (t1 - t) * CELL + CELL / 2;
        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
        );
        out.push_str(
            "<style>.black{fill:#000;stroke:#000}.green{fill:#1a9641;stroke:#1a9641}.red{fill:#d7191c;stroke:#d7191c}\
             .grid{stroke:#ddd;stroke-width:1}.axis{font:10px sans-serif;fill:#444}.diff{stroke-width:1.5;fill:none}</style>\n",
        );
        let _ = writeln!(
            out,
            "<title>E{} of {} at w = {}</title>",
            self.page,
            xml_escape(&self.presentation),
            self.weight
        );
        for s in s0..=s1 {
            let _ = writeln!(out, "<line class=\"grid\" x1=\"{0}\" y1=\"{PAD}\" x2=\"{0}\" y2=\"{1}\"/>", x(s), height - PAD);
            let _ = writeln!(out, "<text class=\"axis\" x=\"{}\" y=\"{}\" text-anchor=\"middle\">{s}</text>", x(s), height - PAD / 2);
        }
        for t in t0..=t1 {
            let _ = writeln!(out, "<line class=\"grid\" x1=\"{PAD}\" y1=\"{0}\" x2=\"{1}\" y2=\"{0}\"/>", y(t), width - PAD);
            let _ = writeln!(out, "<text class=\"axis\" x=\"{}\" y=\"{}\" text-anchor=\"end\">{t}</text>", PAD / 2, y(t) + 3);
        }
        for a in &self.arrows {
            let _ = writeln!(
                out,
                "<line class=\"diff {}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"><title>d{}</title></line>",
                a.color.name(),
                x(a.from.0),
                y(a.from.1),
                x(a.to.0),
                y(a.to.1),
                a.r
            );
        }
        for ((s, t), v) in self.cells() {
            let n = v.len() as i64;
            for (k, c) in v.iter().enumerate() {
                let dx = (2 * k as i64 - (n - 1)) * 4;
                let _ = writeln!(
                    out,
                    "<circle class=\"{}\" cx=\"{}\" cy=\"{}\" r=\"3\"><title>{}</title></circle>",
                    c.color.name(),
                    x(s) + dx,
                    y(t),
                    xml_escape(&c.label)
                );
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Chart of the page at the lowest weight of its window.
pub fn render_chart(page: &Page, format: ChartFormat) -> String {
    let spec = ChartSpec::from_page(page, page.window.w.0);
    match format {
        ChartFormat::Ascii => spec.ascii(),
        ChartFormat::Svg => spec.svg(),
    }
}
