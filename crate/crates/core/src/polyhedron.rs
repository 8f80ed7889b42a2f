//! General-form polyhedra `{x : Ax = b, Bx <= d}`.
//!
//! Rows of `B` are kept exactly as given: redundant and duplicate rows are
//! allowed and every facet query refers to row indices of `B`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_traits::{Signed, Zero};

use crate::error::{check_len, Error, Result};
use crate::limits::EnumLimits;
use crate::matrix::{RationalMatrix, RowBasis};
use crate::rational::{dot, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyhedron {
    dim: usize,
    eq: RationalMatrix,
    eq_rhs: Vec<Rational>,
    ineq: RationalMatrix,
    ineq_rhs: Vec<Rational>,
}

/// Rows of `B` tight at a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightSet {
    pub point: Vec<Rational>,
    pub rows: Vec<usize>,
}

impl Polyhedron {
    pub fn new(
        dim: usize,
        eq: RationalMatrix,
        eq_rhs: Vec<Rational>,
        ineq: RationalMatrix,
        ineq_rhs: Vec<Rational>,
    ) -> Result<Self> {
        let eq = if eq.rows() == 0 { RationalMatrix::zeros(0, dim) } else { eq };
        let ineq = if ineq.rows() == 0 { RationalMatrix::zeros(0, dim) } else { ineq };
        check_len(dim, eq.cols())?;
        check_len(dim, ineq.cols())?;
        check_len(eq.rows(), eq_rhs.len())?;
        check_len(ineq.rows(), ineq_rhs.len())?;
        Ok(Self { dim, eq, eq_rhs, ineq, ineq_rhs })
    }

    /// `{x : Bx <= d}`.
    pub fn from_inequalities(ineq: RationalMatrix, ineq_rhs: Vec<Rational>) -> Result<Self> {
        let dim = ineq.cols();
        Self::new(dim, RationalMatrix::zeros(0, dim), Vec::new(), ineq, ineq_rhs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eq(&self) -> &RationalMatrix {
        &self.eq
    }

    pub fn eq_rhs(&self) -> &[Rational] {
        &self.eq_rhs
    }

    pub fn ineq(&self) -> &RationalMatrix {
        &self.ineq
    }

    pub fn ineq_rhs(&self) -> &[Rational] {
        &self.ineq_rhs
    }

    pub fn num_ineq(&self) -> usize {
        self.ineq.rows()
    }

    /// `A` stacked over `B`.
    pub fn stacked(&self) -> RationalMatrix {
        self.eq.vstack(&self.ineq).expect("same width")
    }

    pub fn eq_rank(&self) -> usize {
        self.eq.rank()
    }

    /// `d(i) - B_i x`.
    pub fn slack(&self, row: usize, x: &[Rational]) -> Rational {
        &self.ineq_rhs[row] - dot(self.ineq.row(row), x)
    }

    pub fn slacks(&self, x: &[Rational]) -> Vec<Rational> {
        (0..self.num_ineq()).map(|i| self.slack(i, x)).collect()
    }

    pub fn contains(&self, x: &[Rational]) -> Result<bool> {
        check_len(self.dim, x.len())?;
        let eq_ok = (0..self.eq.rows()).all(|i| dot(self.eq.row(i), x) == self.eq_rhs[i]);
        Ok(eq_ok && (0..self.num_ineq()).all(|i| !self.slack(i, x).is_negative()))
    }

    pub(crate) fn require_member(&self, x: &[Rational]) -> Result<()> {
        if self.contains(x)? {
            Ok(())
        } else {
            Err(Error::NotInPolyhedron)
        }
    }

    pub fn tight_rows(&self, x: &[Rational]) -> Result<TightSet> {
        self.require_member(x)?;
        Ok(TightSet { point: x.to_vec(), rows: self.tight_rows_unchecked(x) })
    }

    pub(crate) fn tight_rows_unchecked(&self, x: &[Rational]) -> Vec<usize> {
        (0..self.num_ineq()).filter(|&i| self.slack(i, x).is_zero()).collect()
    }

    /// Rank of `A` stacked with the given rows of `B`.
    pub fn rank_with_rows(&self, rows: &[usize]) -> usize {
        let mut basis = RowBasis::new(self.dim);
        for i in 0..self.eq.rows() {
            basis.insert(self.eq.row(i));
        }
        for &i in rows {
            basis.insert(self.ineq.row(i));
        }
        basis.rank()
    }

    pub fn is_vertex(&self, x: &[Rational]) -> Result<bool> {
        self.require_member(x)?;
        Ok(self.rank_with_rows(&self.tight_rows_unchecked(x)) == self.dim)
    }

    pub(crate) fn require_vertex(&self, x: &[Rational]) -> Result<()> {
        if self.is_vertex(x)? {
            Ok(())
        } else {
            Err(Error::NotAVertex)
        }
    }

    /// All basic feasible solutions, sorted lexicographically.
    pub fn enumerate_vertices(&self, limits: &EnumLimits) -> Result<Vec<Vec<Rational>>> {
        if self.dim > limits.max_dim {
            return Err(Error::TooLarge(format!(
                "dimension {} exceeds bound {}",
                self.dim, limits.max_dim
            )));
        }
        let mut basis = RowBasis::new(self.dim);
        for i in 0..self.eq.rows() {
            basis.insert(self.eq.row(i));
        }
        let mut found = BTreeSet::new();
        let mut chosen = Vec::new();
        self.vertex_search(0, &basis, &mut chosen, &mut found);
        Ok(found.into_iter().collect())
    }

    fn vertex_search(
        &self,
        start: usize,
        basis: &RowBasis,
        chosen: &mut Vec<usize>,
        found: &mut BTreeSet<Vec<Rational>>,
    ) {
        if basis.rank() == self.dim {
            let system = self.eq.vstack(&self.ineq.select_rows(chosen)).expect("same width");
            let rhs: Vec<Rational> = self
                .eq_rhs
                .iter()
                .cloned()
                .chain(chosen.iter().map(|&i| self.ineq_rhs[i].clone()))
                .collect();
            if let Ok(Some(x)) = system.solve(&rhs) {
                if self.contains(&x).unwrap_or(false) {
                    found.insert(x);
                }
            }
            return;
        }
        let missing = self.dim - basis.rank();
        for i in start..self.num_ineq() {
            if self.num_ineq() - i < missing {
                break;
            }
            let mut next = basis.clone();
            if next.insert(self.ineq.row(i)) {
                chosen.push(i);
                self.vertex_search(i + 1, &next, chosen, found);
                chosen.pop();
            }
        }
    }

    /// Rows of `B` tight at both points.
    pub fn shared_facet_rows(&self, v: &[Rational], w: &[Rational]) -> Result<Vec<usize>> {
        self.require_member(v)?;
        self.require_member(w)?;
        Ok((0..self.num_ineq())
            .filter(|&i| self.slack(i, v).is_zero() && self.slack(i, w).is_zero())
            .collect())
    }

    /// Copy with repeated `(B_i, d_i)` rows removed (first occurrence kept).
    pub fn without_duplicate_rows(&self) -> Polyhedron {
        let mut seen = BTreeSet::new();
        let mut keep = Vec::new();
        for i in 0..self.num_ineq() {
            let mut key = self.ineq.row(i).to_vec();
            key.push(self.ineq_rhs[i].clone());
            if seen.insert(key) {
                keep.push(i);
            }
        }
        Polyhedron {
            dim: self.dim,
            eq: self.eq.clone(),
            eq_rhs: self.eq_rhs.clone(),
            ineq: self.ineq.select_rows(&keep),
            ineq_rhs: keep.iter().map(|&i| self.ineq_rhs[i].clone()).collect(),
        }
    }

    /// Copy with `row . x <= rhs` appended as the last row of `B`.
    pub fn with_inequality(&self, row: Vec<Rational>, rhs: Rational) -> Result<Polyhedron> {
        let mut p = self.clone();
        p.ineq.push_row(row)?;
        p.ineq_rhs.push(rhs);
        Ok(p)
    }

    /// Copy with `row . x = rhs` appended to `A`.
    pub fn with_equality(&self, row: Vec<Rational>, rhs: Rational) -> Result<Polyhedron> {
        let mut p = self.clone();
        p.eq.push_row(row)?;
        p.eq_rhs.push(rhs);
        Ok(p)
    }

    /// Parses the line-oriented text format (`n`, `EQ`, `LE` blocks).
    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        let err = |line: usize, message: String| Error::Parse { line, message };
        let mut it = lines.into_iter().peekable();
        let (line, header) = it.next().ok_or_else(|| err(1, "empty polyhedron file".into()))?;
        let dim = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["n", k] => k.parse::<usize>().map_err(|_| err(line, format!("bad dimension '{k}'")))?,
            _ => return Err(err(line, "expected header 'n <dimension>'".into())),
        };
        type Block = (Vec<Vec<Rational>>, Vec<Rational>);
        let mut blocks: [Option<Block>; 2] = [None, None];
        while let Some((line, head)) = it.next() {
            let (slot, count) = match head.split_whitespace().collect::<Vec<_>>().as_slice() {
                [kind @ ("EQ" | "LE"), k] => {
                    let count = k
                        .parse::<usize>()
                        .map_err(|_| err(line, format!("bad row count '{k}'")))?;
                    (usize::from(*kind == "LE"), count)
                }
                _ => return Err(err(line, format!("expected 'EQ <rows>' or 'LE <rows>', found '{head}'"))),
            };
            if blocks[slot].is_some() {
                return Err(err(line, "duplicate block".into()));
            }
            let mut rows = Vec::with_capacity(count);
            let mut rhs = Vec::with_capacity(count);
            for _ in 0..count {
                let (line, text) = it
                    .next()
                    .ok_or_else(|| err(line, format!("block declares {count} rows but input ended")))?;
                let (lhs, r) = text
                    .split_once('|')
                    .ok_or_else(|| err(line, "row must have the form 'a_1 ... a_n | b'".into()))?;
                let coeffs = lhs
                    .split_whitespace()
                    .map(parse_rational)
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|m| err(line, m))?;
                if coeffs.len() != dim {
                    return Err(err(line, format!("expected {dim} coefficients, found {}", coeffs.len())));
                }
                rows.push(coeffs);
                rhs.push(parse_rational(r).map_err(|m| err(line, m))?);
            }
            blocks[slot] = Some((rows, rhs));
        }
        let [eq, le] = blocks;
        let (eq_rows, eq_rhs) = eq.unwrap_or_default();
        let (le_rows, le_rhs) = le.unwrap_or_default();
        Self::new(
            dim,
            RationalMatrix::from_rows(dim, eq_rows)?,
            eq_rhs,
            RationalMatrix::from_rows(dim, le_rows)?,
            le_rhs,
        )
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("n {}\n", self.dim);
        for (tag, m, rhs) in [("EQ", &self.eq, &self.eq_rhs), ("LE", &self.ineq, &self.ineq_rhs)] {
            let _ = writeln!(out, "{tag} {}", m.rows());
            for (i, d) in rhs.iter().enumerate() {
                let coeffs: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
                let _ = writeln!(out, "{} | {}", coeffs.join(" "), d);
            }
        }
        out
    }
}

/// Exhaustive test that every square submatrix has determinant in {0, 1, -1}.
///
/// Zero rows, unit rows and repeated rows (up to sign) are stripped first, and
/// likewise for columns; none of these change the answer.
pub fn is_totally_unimodular(m: &RationalMatrix, limits: &EnumLimits) -> Result<bool> {
    let mut entries: Vec<Vec<i64>> = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut row = Vec::with_capacity(m.cols());
        for x in m.row(i) {
            if !x.is_integer() || x.numer().magnitude() > &1u32.into() {
                return Ok(false);
            }
            row.push(if x.is_zero() { 0 } else if x.is_positive() { 1 } else { -1 });
        }
        entries.push(row);
    }
    let mut cols = m.cols();
    loop {
        let before = (entries.len(), cols);
        entries = strip_rows(entries);
        let t = transpose_i64(&entries, cols);
        let t = strip_rows(t);
        cols = t.len();
        entries = transpose_i64(&t, entries.len());
        if (entries.len(), cols) == before {
            break;
        }
    }
    let rows = entries.len();
    let k_max = rows.min(cols);
    if k_max > limits.max_tu_minor {
        return Err(Error::TooLarge(format!(
            "unimodularity check needs minors of order {k_max}, bound is {}",
            limits.max_tu_minor
        )));
    }
    for k in 2..=k_max {
        let mut ok = true;
        for_each_combination(rows, k, &mut |rs| {
            for_each_combination(cols, k, &mut |cs| {
                let sub: Vec<Vec<i64>> =
                    rs.iter().map(|&r| cs.iter().map(|&c| entries[r][c]).collect()).collect();
                if bareiss_det(sub).abs() > 1 {
                    ok = false;
                }
                ok
            });
            ok
        });
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

fn strip_rows(rows: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut out = Vec::new();
    for row in rows {
        if row.iter().filter(|&&x| x != 0).count() <= 1 {
            continue;
        }
        let neg: Vec<i64> = row.iter().map(|x| -x).collect();
        if seen.contains(&row) || seen.contains(&neg) {
            continue;
        }
        seen.insert(row.clone());
        out.push(row);
    }
    out
}

fn transpose_i64(rows: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    (0..cols).map(|j| rows.iter().map(|r| r[j]).collect()).collect()
}

fn bareiss_det(mut a: Vec<Vec<i64>>) -> i64 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i64;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Calls `f` on each k-subset of `0..n` in lexicographic order until it returns false.
pub(crate) fn for_each_combination(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        let Some(pos) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[pos] += 1;
        for i in pos + 1..k {
            idx[i] = idx[i - 1] + 1;
        }
    }
}
