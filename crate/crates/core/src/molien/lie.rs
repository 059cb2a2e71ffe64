//! Brute-force invariant counting: the dimension of the joint kernel of the
//! six so(3)⊕so(3) derivations on polynomials of a fixed multidegree in the
//! 15 coordinates (s, p, β̂).

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::MolienError;
use crate::series::compositions;

/// Default cap on the number of monomials of a multidegree.
pub const DEFAULT_LIE_CAP: usize = 50_000;

const NVARS: usize = 15;
const S: usize = 0;
const P: usize = 3;
const B: usize = 6;

type Monomial = [u8; NVARS];

fn beta(k: usize, l: usize) -> usize {
    B + 3 * k + l
}

/// so(3) basis: `(L_a)_{ij} = ε_{aij}`.
fn so3_generator(a: usize) -> [[i64; 3]; 3] {
    let mut l = [[0i64; 3]; 3];
    for (i, row) in l.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = crate::invariants::levi_civita(a, i, j) as i64;
        }
    }
    l
}

/// The linear vector fields `v ↦ Av` on R¹⁵ for the six generators, as
/// sparse `(i, j, A_ij)` triples.
fn generators() -> Vec<Vec<(usize, usize, i64)>> {
    let mut out = Vec::with_capacity(6);
    for a in 0..3 {
        let l = so3_generator(a);
        // first factor: δs = L s, δβ = L β
        let mut g = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                if l[i][j] != 0 {
                    g.push((S + i, S + j, l[i][j]));
                    for col in 0..3 {
                        g.push((beta(i, col), beta(j, col), l[i][j]));
                    }
                }
            }
        }
        out.push(g);
    }
    for a in 0..3 {
        let l = so3_generator(a);
        // second factor: δp = L p, δβ = β Lᵀ
        let mut g = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                if l[i][j] != 0 {
                    g.push((P + i, P + j, l[i][j]));
                    for row in 0..3 {
                        g.push((beta(row, i), beta(row, j), l[i][j]));
                    }
                }
            }
        }
        out.push(g);
    }
    out
}

/// All monomials with degree `d[0]` in s, `d[1]` in p and `d[2]` in β̂.
fn monomial_basis(d: [u32; 3]) -> Vec<Monomial> {
    let s_part = compositions(3, d[0]);
    let p_part = compositions(3, d[1]);
    let b_part = compositions(9, d[2]);
    let mut out = Vec::with_capacity(s_part.len() * p_part.len() * b_part.len());
    for s in &s_part {
        for p in &p_part {
            for b in &b_part {
                let mut m = [0u8; NVARS];
                for (k, &e) in s.iter().chain(p).chain(b).enumerate() {
                    m[k] = e as u8;
                }
                out.push(m);
            }
        }
    }
    out
}

/// Number of monomials of multidegree `d`.
pub fn polynomial_space_dimension(d: [u32; 3]) -> usize {
    compositions(3, d[0]).len() * compositions(3, d[1]).len() * compositions(9, d[2]).len()
}

type SparseRow = Vec<(usize, BigInt)>;

/// Incremental row echelon form over Z with primitive rows.
#[derive(Default)]
struct Echelon {
    pivots: HashMap<usize, SparseRow>,
}

impl Echelon {
    /// Inserts a row; returns whether it increased the rank.
    fn insert(&mut self, mut row: SparseRow) -> bool {
        loop {
            let Some((lead, lead_coeff)) = row.first().map(|(c, v)| (*c, v.clone())) else {
                return false;
            };
            match self.pivots.get(&lead) {
                None => {
                    self.pivots.insert(lead, row);
                    return true;
                }
                Some(pivot) => {
                    let g = pivot[0].1.gcd(&lead_coeff);
                    let a = &pivot[0].1 / &g;
                    let b = &lead_coeff / &g;
                    row = combine(&row, &a, pivot, &b);
                    make_primitive(&mut row);
                }
            }
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// `a·x − b·y` on sorted sparse rows.
fn combine(x: &SparseRow, a: &BigInt, y: &SparseRow, b: &BigInt) -> SparseRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        let (col, val) = if take_x {
            i += 1;
            (x[i - 1].0, a * &x[i - 1].1)
        } else if take_y {
            j += 1;
            (y[j - 1].0, -(b * &y[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (x[i - 1].0, a * &x[i - 1].1 - b * &y[j - 1].1)
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    out
}

fn make_primitive(row: &mut SparseRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
    if row.first().is_some_and(|(_, v)| v.is_negative()) {
        for (_, v) in row.iter_mut() {
            *v = -&*v;
        }
    }
}

/// Invariant dimension of multidegree `d` from the Lie-algebra action, with
/// exact integer elimination. Fails with `TooLarge` above `cap` monomials.
pub fn invariant_dimension_lie(d: [u32; 3], cap: usize) -> Result<usize, MolienError> {
    let size = polynomial_space_dimension(d);
    if size > cap {
        return Err(MolienError::TooLarge { size, cap });
    }
    let basis = monomial_basis(d);
    let index: HashMap<Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let gens = generators();
    let n = basis.len();

    // Row j holds the images of monomial j under all six derivations, so the
    // rank of these rows is the rank of the stacked action matrix.
    let mut echelon = Echelon::default();
    for m in &basis {
        let mut acc: HashMap<usize, i64> = HashMap::new();
        for (g_idx, g) in gens.iter().enumerate() {
            // D = Σ A_ij v_j ∂_i sends v^m to Σ A_ij m_i v^{m − e_i + e_j}
            for &(i, j, a) in g {
                if m[i] == 0 {
                    continue;
                }
                let mut image = *m;
                image[i] -= 1;
                image[j] += 1;
                let col = g_idx * n + index[&image];
                *acc.entry(col).or_insert(0) += a * m[i] as i64;
            }
        }
        let mut row: SparseRow = acc
            .into_iter()
            .filter(|(_, v)| *v != 0)
            .map(|(c, v)| (c, BigInt::from(v)))
            .collect();
        row.sort_by_key(|(c, _)| *c);
        make_primitive(&mut row);
        echelon.insert(row);
    }
    Ok(n - echelon.rank())
}
