//! Human-readable renderings.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use purefield::exactmath::QPolynomial;
use purefield::newton::OreFactor;
use purefield::oracle::{CertificationReport, MaximalityOutcome};
use purefield::periodicity::{AtlasRow, PeriodAtlas};
use purefield::purebasis::{BasisElement, IndexReport, IntegralBasis};

use crate::json::skip_reason;

fn monomial(out: &mut String, c: &BigInt, i: usize, first: bool) {
    if c.is_negative() {
        out.push('-');
    } else if !first {
        out.push('+');
    }
    let a = c.abs();
    if i == 0 || !a.is_one() {
        write!(out, "{a}").unwrap();
    }
    match i {
        0 => {}
        1 => out.push('X'),
        _ => write!(out, "X^{i}").unwrap(),
    }
}

/// Fraction style, highest degree first: `(X^8+2X^4+3X^2+4)/6`.
pub fn element(e: &BasisElement) -> String {
    let coeffs = e.numerator_coeffs();
    let mut num = String::new();
    let mut terms = 0;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if !c.is_zero() {
            monomial(&mut num, c, i, terms == 0);
            terms += 1;
        }
    }
    if num.is_empty() {
        num.push('0');
    }
    let den = e.denominator();
    if den.is_one() {
        num
    } else if terms > 1 {
        format!("({num})/{den}")
    } else {
        format!("{num}/{den}")
    }
}

pub fn poly(f: &QPolynomial) -> String {
    match BasisElement::from_qpoly(f) {
        Ok(e) => element(&e),
        Err(_) => f.to_string(),
    }
}

pub fn element_list<'a>(elements: impl IntoIterator<Item = &'a QPolynomial>) -> String {
    let parts: Vec<String> = elements.into_iter().map(poly).collect();
    format!("({})", parts.join(", "))
}

fn radicand(m: i64) -> String {
    if m < 0 {
        format!("({m})")
    } else {
        m.to_string()
    }
}

fn factored_index(report: &IndexReport) -> String {
    let parts: Vec<String> = report
        .per_prime
        .iter()
        .filter(|(_, &e)| e > 0)
        .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        format!("{} = {}", parts.join(" * "), report.total_index)
    }
}

pub fn basis(b: &IntegralBasis, report: &IndexReport, n0: u64) -> String {
    let field = b.field();
    let r = purefield::exactmath::residue_i64(field.m(), n0);
    let mut out = String::new();
    writeln!(out, "Q({}^(1/{})), m = {r} mod {n0}", radicand(field.m()), field.n()).unwrap();
    writeln!(out, "B_{r} = {}", element_list(&b.polynomials())).unwrap();
    writeln!(out, "index: {}", factored_index(report)).unwrap();
    writeln!(out, "disc(X^{} - m) = {}", field.n(), report.poly_discriminant).unwrap();
    writeln!(out, "disc(field) = {}", report.field_discriminant).unwrap();
    out
}

pub fn index(report: &IndexReport) -> String {
    let mut out = String::new();
    writeln!(out, "n = {}, m = {}", report.n, report.m).unwrap();
    for (p, e) in &report.per_prime {
        let (bound, exact) = report.polygon[p];
        let kind = if exact { "exact" } else { "lower bound" };
        writeln!(out, "  ind_{p} = {e}  (polygon {kind} {bound})").unwrap();
    }
    writeln!(out, "index: {}", factored_index(report)).unwrap();
    writeln!(out, "disc(X^{} - m) = {}", report.n, report.poly_discriminant).unwrap();
    writeln!(out, "disc(field) = {}", report.field_discriminant).unwrap();
    out
}

/// Point cloud on a grid: `o` vertex, `*` other point, `.` empty; abscissa grows to the right.
pub fn polygon(p: u64, k: u32, m: i64, factor: &OreFactor) -> String {
    let poly = &factor.polygon;
    let width = poly.points.iter().map(|&(x, _)| x).max().unwrap_or(0) as usize;
    let height = poly.points.iter().map(|&(_, y)| y).max().unwrap_or(0) as usize;
    let mut out = String::new();
    writeln!(out, "X^{} - {m} at p = {p}, phi = {}", p.pow(k), factor.phi).unwrap();
    let label = height.to_string().len();
    for y in (0..=height).rev() {
        let mut line = format!("{y:>label$} |");
        for x in 0..=width {
            let pt = (x as u64, y as u64);
            let c = if poly.vertices.contains(&pt) {
                'o'
            } else if poly.points.contains(&pt) {
                '*'
            } else {
                '.'
            };
            line.push(' ');
            line.push(c);
        }
        writeln!(out, "{line}").unwrap();
    }
    writeln!(out, "{} +{}", " ".repeat(label), "--".repeat(width + 1)).unwrap();
    for s in &poly.sides {
        let sep = if s.residual.is_separable().unwrap_or(false) { "separable" } else { "not separable" };
        writeln!(
            out,
            "side {:?} -> {:?}: slope -{}/{}, residual {} ({sep})",
            s.start, s.end, s.h, s.e, s.residual
        )
        .unwrap();
    }
    let regular = if factor.regular { "regular" } else { "not regular" };
    writeln!(out, "phi-index {} ({regular})", factor.phi_index).unwrap();
    out
}

pub fn atlas(a: &PeriodAtlas) -> String {
    let mut out = String::new();
    writeln!(out, "n = {}, n0 = {}", a.n, a.n0).unwrap();
    let rw = a.n0.to_string().len().max(1);
    for (r, row) in &a.rows {
        match row {
            AtlasRow::Basis(row) => {
                writeln!(out, "{r:>rw$}  m = {:<8} {}", row.witness, element_list(&row.basis)).unwrap()
            }
            AtlasRow::Skip(reason) => writeln!(out, "{r:>rw$}  {}", skip_reason(*reason)).unwrap(),
            AtlasRow::Unknown { bound } => {
                writeln!(out, "{r:>rw$}  no square-free witness with |m| <= {bound}").unwrap()
            }
        }
    }
    out
}

pub fn certification(n: u64, m: i64, report: &CertificationReport) -> String {
    let mark = |ok: bool| if ok { "pass" } else { "FAIL" };
    let mut out = String::new();
    writeln!(out, "Q({}^(1/{n}))", radicand(m)).unwrap();
    let integral = report.integrality.iter().all(|&b| b);
    writeln!(out, "  integrality      {}", mark(integral)).unwrap();
    writeln!(out, "  ring closure     {}", mark(report.ring_closed)).unwrap();
    writeln!(out, "  discriminant     {}", mark(report.disc_match)).unwrap();
    for (p, o) in &report.maximality {
        let s = match o {
            MaximalityOutcome::Proved => "pass".to_string(),
            MaximalityOutcome::CounterexampleFound(e) => format!("FAIL ({} is integral)", poly(&e.to_qpoly())),
            MaximalityOutcome::Skipped(reason) => format!("skipped ({reason})"),
        };
        writeln!(out, "  {:<17}{s}", format!("{p}-maximality")).unwrap();
    }
    writeln!(out, "certified: {}", if report.certified() { "yes" } else { "no" }).unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(c: &[i64], d: i64) -> BasisElement {
        BasisElement::new(QPolynomial::from_integers(c.iter().copied()), BigInt::from(d)).unwrap()
    }

    #[test]
    fn fraction_style() {
        assert_eq!(element(&el(&[4, 0, 3, 0, 2, 0, 0, 0, 1], 6)), "(X^8+2X^4+3X^2+4)/6");
        assert_eq!(element(&el(&[0, 0, 0, 1], 1)), "X^3");
        assert_eq!(element(&el(&[1], 1)), "1");
        assert_eq!(element(&el(&[0, 1], 1)), "X");
        assert_eq!(element(&el(&[1, -1, 1], 3)), "(X^2-X+1)/3");
        assert_eq!(element(&el(&[0, 0, 1], 2)), "X^2/2");
    }
}
