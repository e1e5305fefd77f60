//! LaTeX truth tables, optionally coloured by a partition of the values.
//!
//! Fragments need `xcolor`; [`latex_document`] wraps them into a compilable
//! file. Designated values are set bold, and with a partition their cells use
//! reversed colours.

use std::fmt::Write as _;

use crate::algebra::Partition;
use crate::error::Result;
use crate::matrix::{Matrix, Operation, Tuples, Value};
use crate::tableau::RuleSet;

/// Colour names and RGB definitions. Classes beyond nine reuse them cyclically.
pub const PALETTE: [(&str, &str); 9] = [
    ("mvred", "0.80,0.10,0.10"),
    ("mvorange", "0.90,0.50,0.00"),
    ("mvgreen", "0.10,0.55,0.10"),
    ("mvpurple", "0.50,0.10,0.60"),
    ("mvgray", "0.40,0.40,0.40"),
    ("mvblue", "0.10,0.25,0.80"),
    ("mvbrown", "0.55,0.35,0.15"),
    ("mvteal", "0.00,0.50,0.50"),
    ("mvpink", "0.85,0.25,0.55"),
];

pub fn escape(s: &str) -> String {
    let mut out = String::new();
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\textbackslash{}"),
            '&' | '%' | '$' | '#' | '_' | '{' | '}' => {
                out.push('\\');
                out.push(c);
            }
            '~' => out.push_str("\\textasciitilde{}"),
            '^' => out.push_str("\\textasciicircum{}"),
            '·' => out.push_str("$\\cdot$"),
            '×' => out.push_str("$\\times$"),
            '≡' => out.push_str("$\\equiv$"),
            c => out.push(c),
        }
    }
    out
}

struct Style<'a> {
    m: &'a Matrix,
    classes: Option<&'a Partition>,
}

impl Style<'_> {
    fn cell(&self, v: Value) -> String {
        let name = escape(self.m.value_name(v));
        let designated = self.m.designates(v);
        match self.classes {
            None if designated => format!("\\textbf{{{name}}}"),
            None => name,
            Some(p) => {
                let color = PALETTE[p.block_of(v) % PALETTE.len()].0;
                if designated {
                    format!("\\colorbox{{{color}}}{{\\textcolor{{white}}{{\\textbf{{{name}}}}}}}")
                } else {
                    format!("\\textcolor{{{color}}}{{{name}}}")
                }
            }
        }
    }

    fn table(&self, op: &Operation, out: &mut String) {
        let n = self.m.len();
        let head = format!("${}$", escape(op.name()));
        match op.arity() {
            1 => {
                let _ = writeln!(out, "\\begin{{tabular}}{{c|c}}\n{head} & \\\\ \\hline");
                for v in self.m.values() {
                    let _ = writeln!(out, "{} & {} \\\\", self.cell(v), self.cell(op.unary(v)));
                }
            }
            2 => {
                let _ = writeln!(out, "\\begin{{tabular}}{{c|{}}}", "c".repeat(n));
                let cols: Vec<String> = self.m.values().map(|v| self.cell(v)).collect();
                let _ = writeln!(out, "{head} & {} \\\\ \\hline", cols.join(" & "));
                for a in self.m.values() {
                    let row: Vec<String> = self.m.values().map(|b| self.cell(op.binary(a, b))).collect();
                    let _ = writeln!(out, "{} & {} \\\\", self.cell(a), row.join(" & "));
                }
            }
            r => {
                // one row per argument tuple
                let _ = writeln!(out, "\\begin{{tabular}}{{{}|c}}", "c".repeat(r.max(1)));
                let blanks = vec![""; r.saturating_sub(1)].join(" & ");
                let sep = if r > 1 { " & " } else { "" };
                let _ = writeln!(out, "{head}{sep}{blanks} & \\\\ \\hline");
                for t in Tuples::new(n, r) {
                    let args: Vec<String> = t.iter().map(|&v| self.cell(v)).collect();
                    let args = if r == 0 { String::new() } else { args.join(" & ") };
                    let _ = writeln!(out, "{args} & {} \\\\", self.cell(op.eval(&t)));
                }
            }
        }
        out.push_str("\\end{tabular}\n");
    }
}

/// One `tabular` per operation, in declaration order, separated by blank
/// lines. With `classes`, colour definitions come first.
pub fn emit_latex_tables(m: &Matrix, classes: Option<&Partition>) -> Result<String> {
    if let Some(p) = classes {
        p.check_for(m)?;
    }
    let style = Style { m, classes };
    let mut out = String::new();
    if let Some(p) = classes {
        for (name, rgb) in PALETTE.iter().take(p.len()) {
            let _ = writeln!(out, "\\definecolor{{{name}}}{{rgb}}{{{rgb}}}");
        }
        out.push('\n');
    }
    for (i, op) in m.ops().iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        style.table(op, &mut out);
    }
    Ok(out)
}

/// Each rule as a display fraction: the signed compound above, its branches
/// below separated by `\mid`. A rule without branches closes at once.
pub fn emit_latex_rules(m: &Matrix, rules: &RuleSet) -> String {
    let mut out = String::new();
    for r in rules.iter() {
        let args: Vec<String> = (1..=r.arity).map(|i| format!("A_{{{i}}}")).collect();
        let sign = |v: Value| format!(r"\mathrm{{{}}}", escape(m.value_name(v)));
        let top = format!(
            r"{}{{:}}\,\mathit{{{}}}({})",
            sign(r.sign),
            escape(&r.op),
            args.join(", ")
        );
        let bottom = if r.branches.is_empty() {
            r"\times".to_string()
        } else {
            r.branches
                .iter()
                .map(|b| {
                    let cs: Vec<String> = b
                        .constraints()
                        .iter()
                        .map(|&(v, i)| format!("{}{{:}}A_{{{}}}", sign(v), i + 1))
                        .collect();
                    if cs.is_empty() {
                        r"\cdot".to_string()
                    } else {
                        cs.join(r",\ ")
                    }
                })
                .collect::<Vec<_>>()
                .join(r" \mid ")
        };
        let _ = writeln!(out, r"\[\frac{{{top}}}{{{bottom}}}\]");
    }
    out
}

pub fn latex_document(body: &str) -> String {
    format!(
        "\\documentclass{{article}}\n\\usepackage{{xcolor}}\n\\begin{{document}}\n\\setlength{{\\fboxsep}}{{1pt}}\n{body}\\end{{document}}\n"
    )
}
