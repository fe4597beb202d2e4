//! LaTeX rendering of presentations.

use qsp_core::algebra::{format_coeff, Gen};
use qsp_core::qsp::{QspPresentation, RelationKind, WordPoly};
use qsp_core::Coefficient;

/// Rewrites a printed coefficient in LaTeX: braces around exponents,
/// subscripts on parameters, implicit products.
pub fn latex_coeff(s: &str, labels: &[String]) -> String {
    let mut out = String::new();
    let chars: Vec<char> = s.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let ch = chars[k];
        match ch {
            '^' => {
                let mut j = k + 1;
                if j < chars.len() && chars[j] == '-' {
                    j += 1;
                }
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let exp: String = chars[k + 1..j].iter().collect();
                out.push_str(&format!("^{{{exp}}}"));
                k = j;
                continue;
            }
            '*' => out.push(' '),
            'c' | 's' => {
                let rest: String = chars[k + 1..].iter().collect();
                let label = labels.iter().filter(|l| rest.starts_with(l.as_str())).max_by_key(|l| l.len());
                match label {
                    Some(l) => {
                        out.push_str(&format!("{ch}_{{{l}}}"));
                        k += 1 + l.chars().count();
                        continue;
                    }
                    None => out.push(ch),
                }
            }
            _ => out.push(ch),
        }
        k += 1;
    }
    out
}

fn latex_gen(g: &Gen, labels: &[String]) -> String {
    match g {
        Gen::E(i) => format!("E_{{{}}}", labels[*i]),
        Gen::F(i) => format!("B_{{{}}}", labels[*i]),
        Gen::K(b) => {
            let nz: Vec<usize> = (0..b.len()).filter(|&t| b[t] != 0).collect();
            if nz.len() == 1 {
                let t = nz[0];
                if b[t] == 1 {
                    format!("K_{{{}}}", labels[t])
                } else {
                    format!("K_{{{}}}^{{{}}}", labels[t], b[t])
                }
            } else {
                let v: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                format!("K_{{({})}}", v.join(","))
            }
        }
    }
}

/// Whether `s` has a `+` or `-` outside parentheses (past a leading sign).
pub fn has_top_level_sum(s: &str) -> bool {
    let mut depth = 0i32;
    for (k, ch) in s.char_indices() {
        match ch {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            '+' | '-' if depth == 0 && k > 0 && !s[..k].ends_with('^') && !s[..k].ends_with('{') => return true,
            _ => {}
        }
    }
    false
}

/// `Σ c_w w` in LaTeX.
pub fn latex_poly(poly: &WordPoly, labels: &[String]) -> String {
    let mut out = String::new();
    for (c, w) in poly {
        if c.is_zero() {
            continue;
        }
        let word: Vec<String> = w.iter().map(|g| latex_gen(g, labels)).collect();
        let word = word.join(" ");
        let cs = latex_coeff(&format_coeff(c, labels), labels);
        let (neg, body) = match cs.strip_prefix('-') {
            Some(b) if !has_top_level_sum(b) => (true, b.to_string()),
            _ => (false, cs.clone()),
        };
        let body = if word.is_empty() {
            body
        } else if body == "1" {
            word
        } else if has_top_level_sum(&body) {
            format!("({body})\\, {word}")
        } else {
            format!("{body}\\, {word}")
        };
        if out.is_empty() {
            out.push_str(if neg { "-" } else { "" });
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// One `align*` environment listing every relation as `… = 0`.
pub fn latex_presentation(p: &QspPresentation) -> String {
    let labels = &p.params.pair.datum.labels;
    let mut out = String::from("\\begin{align*}\n");
    let n = p.relations.len();
    for (k, r) in p.relations.iter().enumerate() {
        let tag = match r.kind {
            RelationKind::KCommute => "K",
            RelationKind::ECommute => "E",
            RelationKind::Serre => "S",
        };
        let end = if k + 1 < n { " \\\\" } else { "" };
        out.push_str(&format!("&{} = 0 && \\text{{({tag}; {}, {})}}{end}\n", latex_poly(&r.poly, labels), labels[r.i], labels[r.j]));
    }
    out.push_str("\\end{align*}\n");
    out
}
