use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive};

use super::laurent::LaurentPoly;
use super::MolienError;

/// Torus weights of each graded piece plus the Weyl-group numerator
/// `Π_{α>0} (1 − x^{−α})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSystem {
    torus_rank: usize,
    slots: Vec<Vec<Vec<i32>>>,
    weyl_factor: LaurentPoly,
}

impl WeightSystem {
    /// Builds a weight system from explicit weights and positive roots.
    pub fn new(torus_rank: usize, slots: Vec<Vec<Vec<i32>>>, positive_roots: &[Vec<i32>]) -> Self {
        assert!(
            slots.iter().flatten().all(|w| w.len() == torus_rank),
            "every weight must have one entry per torus variable"
        );
        let weyl_factor = positive_roots.iter().fold(LaurentPoly::one(torus_rank), |acc, root| {
            let neg: Vec<i32> = root.iter().map(|x| -x).collect();
            &acc * &LaurentPoly::one_minus(neg)
        });
        Self {
            torus_rank,
            slots,
            weyl_factor,
        }
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    pub fn slots(&self) -> &[Vec<Vec<i32>>] {
        &self.slots
    }

    pub fn slot_sizes(&self) -> Vec<usize> {
        self.slots.iter().map(Vec::len).collect()
    }

    pub fn weyl_factor(&self) -> &LaurentPoly {
        &self.weyl_factor
    }

    /// Whether each slot's weight multiset is invariant under negation.
    pub fn slots_closed_under_negation(&self) -> bool {
        self.slots.iter().all(|slot| {
            let mut a = slot.clone();
            let mut b: Vec<Vec<i32>> = slot.iter().map(|w| w.iter().map(|x| -x).collect()).collect();
            a.sort();
            b.sort();
            a == b
        })
    }

    /// The same system with every torus variable inverted, including the
    /// Weyl factor.
    pub fn inverted(&self) -> Self {
        Self {
            torus_rank: self.torus_rank,
            slots: self
                .slots
                .iter()
                .map(|slot| slot.iter().map(|w| w.iter().map(|x| -x).collect()).collect())
                .collect(),
            weyl_factor: self.weyl_factor.invert_variables(),
        }
    }
}

/// SU(2)×SU(2) acting on `V₁ ⊕ V₂ ⊕ V₃` (the `s`, `p` and `β̂` blocks).
///
/// Torus variables `x`, `w` are normalized so each adjoint representation
/// has weights `{x, 1, x⁻¹}`; the Weyl factor is `(1 − x⁻¹)(1 − w⁻¹)`.
pub fn two_qubit_weight_system() -> WeightSystem {
    let adjoint = [-1, 0, 1];
    let first: Vec<Vec<i32>> = adjoint.iter().map(|&a| vec![a, 0]).collect();
    let second: Vec<Vec<i32>> = adjoint.iter().map(|&b| vec![0, b]).collect();
    let product: Vec<Vec<i32>> = adjoint
        .iter()
        .flat_map(|&a| adjoint.iter().map(move |&b| vec![a, b]))
        .collect();
    WeightSystem::new(2, vec![first, second, product], &[vec![1, 0], vec![0, 1]])
}

/// One slot holding the single zero weight of a rank-one torus, with no
/// roots. Its invariant dimension is 1 in every degree.
pub fn trivial_weight_system() -> WeightSystem {
    WeightSystem::new(1, vec![vec![vec![0]]], &[])
}

/// Weights read off a three-variable integrand `ψ(x, y, z)` of the form
/// sometimes printed for this problem: 3 weights at `t₁`, 8 at `t₂`, 24 at
/// `t₃` with Weyl numerator `(1−x⁻¹)(1−y⁻¹)(1−z⁻¹)(1−y⁻¹z⁻¹)`. This is the
/// weight data of su(2) ⊕ su(3) acting on adjoint ⊕ adjoint ⊕ tensor product,
/// not of two qubits; it exists to make that difference checkable.
pub fn printed_integrand_weight_system() -> WeightSystem {
    let w = |x: i32, y: i32, z: i32| vec![x, y, z];
    // adjoint of su(3): two zero weights and the roots ±y, ±z, ±yz
    let su3: Vec<Vec<i32>> = vec![
        w(0, 0, 0),
        w(0, 0, 0),
        w(0, 1, 0),
        w(0, 1, 1),
        w(0, -1, 0),
        w(0, -1, -1),
        w(0, 0, 1),
        w(0, 0, -1),
    ];
    let su2 = vec![w(0, 0, 0), w(1, 0, 0), w(-1, 0, 0)];
    let product: Vec<Vec<i32>> = su2
        .iter()
        .flat_map(|a| su3.iter().map(move |b| a.iter().zip(b).map(|(p, q)| p + q).collect()))
        .collect();
    WeightSystem::new(3, vec![su2, su3, product], &[w(1, 0, 0), w(0, 1, 0), w(0, 0, 1), w(0, 1, 1)])
}

/// Complete homogeneous symmetric polynomials `h_0, …, h_max` of the
/// monomials `x^w`, `w ∈ weights`, via Newton's identity
/// `k·h_k = Σ_{i=1..k} p_i·h_{k−i}` with power sums `p_i = Σ_w x^{i·w}`.
pub fn complete_homogeneous(weights: &[Vec<i32>], rank: usize, max_degree: u32) -> Vec<LaurentPoly> {
    let power_sums: Vec<LaurentPoly> = (1..=max_degree as i32)
        .map(|i| {
            weights.iter().fold(LaurentPoly::zero(rank), |acc, w| {
                &acc + &LaurentPoly::monomial(w.iter().map(|x| x * i).collect(), 1)
            })
        })
        .collect();
    let mut h = vec![LaurentPoly::one(rank)];
    for k in 1..=max_degree as usize {
        let mut acc = LaurentPoly::zero(rank);
        for i in 1..=k {
            acc = &acc + &(&power_sums[i - 1] * &h[k - i]);
        }
        let hk = acc
            .exact_div_scalar(&BigInt::from(k))
            .expect("Newton's identity yields integer coefficients");
        h.push(hk);
    }
    h
}

/// Precomputed `h_d` tables for every slot of a weight system, reusable
/// across multidegrees.
#[derive(Debug, Clone)]
pub struct MolienTables<'a> {
    ws: &'a WeightSystem,
    tables: Vec<Vec<LaurentPoly>>,
}

impl<'a> MolienTables<'a> {
    pub fn new(ws: &'a WeightSystem, max_degrees: &[u32]) -> Self {
        assert_eq!(max_degrees.len(), ws.slots.len(), "one degree bound per slot");
        let tables = ws
            .slots
            .iter()
            .zip(max_degrees)
            .map(|(slot, &d)| complete_homogeneous(slot, ws.torus_rank, d))
            .collect();
        Self { ws, tables }
    }

    /// Constant term of `weyl · Π h_{dᵢ}(slotᵢ)`.
    pub fn dimension(&self, degrees: &[u32]) -> Result<BigUint, MolienError> {
        if degrees.len() != self.tables.len() {
            return Err(MolienError::DegreeCountMismatch {
                expected: self.tables.len(),
                found: degrees.len(),
            });
        }
        let mut factors: Vec<&LaurentPoly> = Vec::with_capacity(degrees.len());
        for (slot, (&d, table)) in degrees.iter().zip(&self.tables).enumerate() {
            match table.get(d as usize) {
                Some(h) => factors.push(h),
                None => {
                    return Err(MolienError::DegreeBeyondTable {
                        slot,
                        degree: d,
                        max: table.len() as u32 - 1,
                    })
                }
            }
        }
        let (last, rest) = factors.split_last().expect("at least one slot");
        let head = rest.iter().fold(self.ws.weyl_factor.clone(), |acc, h| &acc * h);
        let ct = head.constant_term_of_product(last);
        if ct.is_negative() {
            return Err(MolienError::NegativeMultiplicity {
                degrees: degrees.to_vec(),
                value: ct.to_i64().unwrap_or(i64::MIN),
            });
        }
        Ok(ct.magnitude().clone())
    }
}

/// Dimension of the invariants of multidegree `degrees`: the torus constant
/// term of `weyl_factor · Π h_{dᵢ}(slotᵢ)`.
pub fn invariant_dimension(ws: &WeightSystem, degrees: &[u32]) -> Result<BigUint, MolienError> {
    if degrees.len() != ws.slots.len() {
        return Err(MolienError::DegreeCountMismatch {
            expected: ws.slots.len(),
            found: degrees.len(),
        });
    }
    MolienTables::new(ws, degrees).dimension(degrees)
}
