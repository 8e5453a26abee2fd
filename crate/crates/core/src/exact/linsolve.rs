//! Exact linear systems over the field of rational functions in the params.
//!
//! Forward elimination is fraction free (Bareiss): after each pivot every
//! updated entry is divided exactly by the previous pivot, so entries stay
//! polynomial and are minors of the input. Back substitution then happens in
//! `RatFunc`. Pivots are the first nonzero entry in column order, which makes
//! the particular solution and the nullspace basis reproducible.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::mpoly::MPoly;
use super::ratfunc::RatFunc;
use super::ExactError;

#[derive(Clone, Debug, PartialEq)]
pub struct LinearSolution {
    /// Solution with every free variable set to zero.
    pub particular: Vec<RatFunc>,
    /// One vector per free column, with a 1 in that column.
    pub nullspace: Vec<Vec<RatFunc>>,
    pub consistent: bool,
    /// Original row index of an equation `0 = c ≠ 0` when inconsistent.
    pub certificate_row: Option<usize>,
    /// Columns that received a pivot, in order.
    pub pivots: Vec<usize>,
}

impl LinearSolution {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn solve_exact(matrix: &[Vec<MPoly>], rhs: &[MPoly]) -> Result<LinearSolution, ExactError> {
    let rows = matrix.len();
    if rhs.len() != rows {
        return Err(ExactError::Shape(format!("{} rows but {} right-hand sides", rows, rhs.len())));
    }
    let cols = matrix.first().map_or(0, |r| r.len());
    if matrix.iter().any(|r| r.len() != cols) {
        return Err(ExactError::Shape("ragged matrix".into()));
    }

    // Augmented matrix; the last column is the right-hand side.
    let mut m: Vec<Vec<MPoly>> = matrix
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let mut order: Vec<usize> = (0..rows).collect();
    let mut prev = MPoly::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        order.swap(r, p);
        let piv = m[r][c].clone();
        for i in r + 1..rows {
            let factor = m[i][c].clone();
            for j in c + 1..=cols {
                let v = &(&piv * &m[i][j]) - &(&factor * &m[r][j]);
                m[i][j] = v.div_exact(&prev)?;
            }
            m[i][c] = MPoly::zero();
        }
        // Rows without a pivot in this column still need the Bareiss scaling
        // to keep later divisions exact; rows above r are untouched.
        prev = piv;
        pivots.push(c);
        r += 1;
    }

    // Consistency: rows below the rank must have zero right-hand side.
    for i in r..rows {
        if !m[i][cols].is_zero() {
            return Ok(LinearSolution {
                particular: Vec::new(),
                nullspace: Vec::new(),
                consistent: false,
                certificate_row: Some(order[i]),
                pivots,
            });
        }
    }

    let is_pivot = |c: usize| pivots.contains(&c);
    let frees: Vec<usize> = (0..cols).filter(|&c| !is_pivot(c)).collect();

    let back_sub = |rhs_col: Option<usize>, free: Option<usize>| -> Result<Vec<RatFunc>, ExactError> {
        let mut x = vec![RatFunc::zero(); cols];
        if let Some(f) = free {
            x[f] = RatFunc::one();
        }
        for (k, &pc) in pivots.iter().enumerate().rev() {
            let row = &m[k];
            let mut acc = match rhs_col {
                Some(b) => RatFunc::from_poly(row[b].clone()),
                None => RatFunc::zero(),
            };
            for j in pc + 1..cols {
                if !row[j].is_zero() && !x[j].is_zero() {
                    acc = acc.sub(&RatFunc::from_poly(row[j].clone()).mul(&x[j])?)?;
                }
            }
            x[pc] = acc.div(&RatFunc::from_poly(row[pc].clone()))?;
        }
        Ok(x)
    };

    let particular = back_sub(Some(cols), None)?;
    let nullspace = frees.iter().map(|&f| back_sub(None, Some(f))).collect::<Result<Vec<_>, _>>()?;
    Ok(LinearSolution { particular, nullspace, consistent: true, certificate_row: None, pivots })
}

impl Serialize for LinearSolution {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let show = |v: &Vec<RatFunc>| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let mut st = s.serialize_struct("LinearSolution", 4)?;
        st.serialize_field("consistent", &self.consistent)?;
        st.serialize_field("certificate_row", &self.certificate_row)?;
        st.serialize_field("particular", &show(&self.particular))?;
        st.serialize_field("nullspace", &self.nullspace.iter().map(show).collect::<Vec<_>>())?;
        st.end()
    }
}
