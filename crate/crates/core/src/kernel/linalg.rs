//! Dense linear algebra over exact fields.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{GaussianRational, KernelError, RatFunc};

/// Exact field operations. `zero_like` and `one_like` exist because some
/// fields (rational functions) carry a variable table.
pub trait Field: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_elem(&self, o: &Self) -> Self;
    fn sub_elem(&self, o: &Self) -> Self;
    fn mul_elem(&self, o: &Self) -> Self;
    fn div_elem(&self, o: &Self) -> Result<Self, KernelError>;
}

impl Field for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_elem(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_elem(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_elem(&self, o: &Self) -> Self {
        self * o
    }
    fn div_elem(&self, o: &Self) -> Result<Self, KernelError> {
        if o.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        Ok(self / o)
    }
}

impl Field for GaussianRational {
    fn zero_like(&self) -> Self {
        GaussianRational::zero()
    }
    fn one_like(&self) -> Self {
        GaussianRational::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_elem(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_elem(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_elem(&self, o: &Self) -> Self {
        self * o
    }
    fn div_elem(&self, o: &Self) -> Result<Self, KernelError> {
        Ok(self * &o.inverse()?)
    }
}

impl Field for RatFunc {
    fn zero_like(&self) -> Self {
        RatFunc::zero(self.vars())
    }
    fn one_like(&self) -> Self {
        RatFunc::one(self.vars())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_elem(&self, o: &Self) -> Self {
        self.add(o).expect("same table")
    }
    fn sub_elem(&self, o: &Self) -> Self {
        self.sub(o).expect("same table")
    }
    fn mul_elem(&self, o: &Self) -> Self {
        self.mul(o).expect("same table")
    }
    fn div_elem(&self, o: &Self) -> Result<Self, KernelError> {
        self.div(o)
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(m: &mut [Vec<F>]) -> Result<Vec<usize>, KernelError> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&k| !m[k][c].is_zero_elem()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].one_like().div_elem(&m[r][c])?;
        for e in &mut m[r][c..cols] {
            *e = e.mul_elem(&inv);
        }
        let pivot_row = m[r].clone();
        for (k, row) in m.iter_mut().enumerate() {
            if k != r && !row[c].is_zero_elem() {
                let f = row[c].clone();
                for (e, p) in row[c..cols].iter_mut().zip(&pivot_row[c..cols]) {
                    *e = e.sub_elem(&p.mul_elem(&f));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok(pivots)
}

pub fn rank<F: Field>(m: &[Vec<F>]) -> Result<usize, KernelError> {
    let mut w = m.to_vec();
    Ok(rref(&mut w)?.len())
}

/// Basis of `{v : m·v = 0}`. `ncols` is needed when `m` has no rows;
/// `unit` supplies the field's one.
pub fn nullspace<F: Field>(
    m: &[Vec<F>],
    ncols: usize,
    unit: &F,
) -> Result<Vec<Vec<F>>, KernelError> {
    let mut w = m.to_vec();
    let pivots = rref(&mut w)?;
    let zero = unit.zero_like();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![zero.clone(); ncols];
        v[free] = unit.one_like();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = zero.sub_elem(&w[r][free]);
        }
        basis.push(v);
    }
    Ok(basis)
}

/// One solution of `m·x = b`, or `None` if the system is inconsistent.
pub fn solve<F: Field>(m: &[Vec<F>], b: &[F], unit: &F) -> Result<Option<Vec<F>>, KernelError> {
    let ncols = m.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<F>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug)?;
    if pivots.contains(&ncols) {
        return Ok(None);
    }
    let mut x = vec![unit.zero_like(); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][ncols].clone();
    }
    Ok(Some(x))
}
