//! Exact adjacency-matrix kernels and nut-graph certificates.
//!
//! Elimination is fraction-free (Bareiss) over arbitrary-precision integers;
//! rationals appear only in the final back-substitution, after which every
//! basis vector is scaled to a primitive integer vector whose first nonzero
//! entry is positive.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

/// Integer vector indexed by vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KernelVector(Vec<BigInt>);

impl KernelVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        KernelVector(entries)
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        KernelVector(entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_zero_free(&self) -> bool {
        self.0.iter().all(|e| !e.is_zero())
    }

    /// Entries as `i64`, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|e| i64::try_from(e).ok()).collect()
    }

    pub fn negated(&self) -> KernelVector {
        KernelVector(self.0.iter().map(|e| -e).collect())
    }

    /// Divides out the gcd and makes the first nonzero entry positive.
    pub fn normalised(&self) -> KernelVector {
        let g = self
            .0
            .iter()
            .fold(BigInt::zero(), |acc, e| acc.gcd(e));
        if g.is_zero() {
            return self.clone();
        }
        let mut out: Vec<BigInt> = self.0.iter().map(|e| e / &g).collect();
        if out.iter().find(|e| !e.is_zero()).is_some_and(|e| e.is_negative()) {
            out.iter_mut().for_each(|e| *e = -&*e);
        }
        KernelVector(out)
    }

    pub fn is_normalised(&self) -> bool {
        *self == self.normalised()
    }

    /// True when `self` and `other` agree after normalisation, i.e. are
    /// equal up to a nonzero scalar multiple.
    pub fn equal_up_to_scale(&self, other: &KernelVector) -> bool {
        self.normalised() == other.normalised()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Debug for KernelVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter().map(|e| e.to_string())).finish()
    }
}

impl fmt::Display for KernelVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Row echelon form of the adjacency matrix from Bareiss elimination.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn bareiss(g: &Graph) -> Echelon {
    let n = g.order();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|u| {
            let mut row = vec![BigInt::zero(); n];
            for &v in g.neighbours(u) {
                row[v] = BigInt::one();
            }
            row
        })
        .collect();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in bottom.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..n {
                let mut val = pivot * &row[j];
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    val -= &factor * &pivot_row[j];
                }
                if !val.is_zero() {
                    val /= &prev;
                }
                row[j] = val;
            }
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Echelon { rows: a, pivots }
}

/// Rank of the adjacency matrix over the rationals.
pub fn rank(g: &Graph) -> usize {
    bareiss(g).pivots.len()
}

/// Dimension of the adjacency-matrix kernel over the rationals.
pub fn nullity(g: &Graph) -> usize {
    g.order() - rank(g)
}

/// Kernel basis, one primitive sign-normalised vector per free column of
/// the echelon form.
pub fn kernel_basis(g: &Graph) -> Vec<KernelVector> {
    let n = g.order();
    let ech = bareiss(g);
    let is_pivot = {
        let mut f = vec![false; n];
        for &c in &ech.pivots {
            f[c] = true;
        }
        f
    };
    (0..n)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut x = vec![BigRational::zero(); n];
            x[free] = BigRational::one();
            for (row, &pc) in ech.rows.iter().zip(&ech.pivots).rev() {
                let mut s = BigRational::zero();
                for j in pc + 1..n {
                    if !row[j].is_zero() && !x[j].is_zero() {
                        s += BigRational::from_integer(row[j].clone()) * &x[j];
                    }
                }
                x[pc] = -s / BigRational::from_integer(row[pc].clone());
            }
            let lcm = x
                .iter()
                .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            let ints = x
                .iter()
                .map(|q| q.numer() * (&lcm / q.denom()))
                .collect();
            KernelVector(ints).normalised()
        })
        .collect()
}

/// True iff `x` is a nonzero vector with zero neighbour sum at every vertex.
pub fn check_kernel_vector(g: &Graph, x: &KernelVector) -> Result<bool> {
    if x.len() != g.order() {
        return Err(Error::DimensionMismatch {
            expected: g.order(),
            found: x.len(),
        });
    }
    if x.is_zero() {
        return Ok(false);
    }
    Ok((0..g.order()).all(|v| {
        g.neighbours(v)
            .iter()
            .map(|&w| &x.0[w])
            .sum::<BigInt>()
            .is_zero()
    }))
}

/// Full nut-graph certificate for a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NutCertificate {
    pub graph: Graph,
    pub nullity: usize,
    /// The unique primitive kernel vector when the nullity is 1.
    pub kernel: Option<KernelVector>,
    pub is_nut: bool,
    pub is_chemical_nut: bool,
}

#[derive(Serialize)]
struct CertificateJson<'a> {
    order: usize,
    size: usize,
    edges: &'a [Edge],
    nullity: usize,
    kernel: Option<Vec<String>>,
    is_nut: bool,
    is_chemical_nut: bool,
}

impl NutCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        let edges = self.graph.edges();
        serde_json::to_value(CertificateJson {
            order: self.graph.order(),
            size: self.graph.size(),
            edges: &edges,
            nullity: self.nullity,
            kernel: self.kernel.as_ref().map(KernelVector::to_strings),
            is_nut: self.is_nut,
            is_chemical_nut: self.is_chemical_nut,
        })
        .expect("certificate serialises")
    }
}

/// Nut graphs: connected, order at least 2, nullity exactly 1 and a
/// zero-free kernel vector.
pub fn verify_nut(g: &Graph) -> NutCertificate {
    let basis = kernel_basis(g);
    let nullity = basis.len();
    let kernel = if nullity == 1 {
        basis.into_iter().next()
    } else {
        None
    };
    let is_nut = g.order() >= 2
        && g.is_connected()
        && kernel.as_ref().is_some_and(KernelVector::is_zero_free);
    NutCertificate {
        graph: g.clone(),
        nullity,
        kernel,
        is_nut,
        is_chemical_nut: is_nut && g.max_degree() <= 3,
    }
}

const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

/// Nullity of the adjacency matrix over GF(2^61 - 1). This is an upper
/// bound for the rational nullity and is used only as a fast filter.
pub fn nullity_mod_prime(g: &Graph) -> usize {
    let n = g.order();
    let mut a = vec![vec![0u64; n]; n];
    for u in 0..n {
        for &v in g.neighbours(u) {
            a[u][v] = 1;
        }
    }
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..n).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        let inv = pow_mod(a[r][c], PRIME - 2);
        for i in r + 1..n {
            if a[i][c] == 0 {
                continue;
            }
            let f = mul_mod(a[i][c], inv);
            for j in c..n {
                let sub = mul_mod(f, a[r][j]);
                a[i][j] = (a[i][j] + PRIME - sub) % PRIME;
            }
        }
        r += 1;
    }
    n - r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seed_2_7() -> Graph {
        Graph::from_edges(
            9,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (0, 2), (4, 8)],
        )
        .unwrap()
    }

    #[test]
    fn nullity_examples() {
        assert_eq!(nullity(&Graph::cycle(4)), 2);
        assert_eq!(nullity(&Graph::complete(4)), 0);
        assert_eq!(nullity(&Graph::cycle(12)), 2);
        assert_eq!(nullity(&Graph::cycle(5)), 0);
        assert_eq!(nullity(&Graph::empty(3)), 3);
        assert_eq!(nullity(&Graph::empty(0)), 0);
    }

    #[test]
    fn cycle_nullity_matches_divisibility_by_four() {
        for n in 3..=24 {
            let expected = if n % 4 == 0 { 2 } else { 0 };
            assert_eq!(nullity(&Graph::cycle(n)), expected, "C{n}");
            assert_eq!(nullity_mod_prime(&Graph::cycle(n)), expected, "C{n}");
        }
    }

    #[test]
    fn c4_kernel_basis_is_brute_force_span() {
        // Brute force: all integer vectors with entries in -2..=2 that lie in
        // the kernel of C4 span a 2-dimensional space, supported on the two
        // antipodal pairs.
        let g = Graph::cycle(4);
        let basis = kernel_basis(&g);
        assert_eq!(basis.len(), 2);
        let mut found = Vec::new();
        for code in 0..5i64.pow(4) {
            let v: Vec<i64> = (0..4).map(|i| (code / 5i64.pow(i)) % 5 - 2).collect();
            let kv = KernelVector::from_ints(&v);
            if check_kernel_vector(&g, &kv).unwrap() {
                found.push(v);
            }
        }
        assert!(found.contains(&vec![1, 0, -1, 0]));
        assert!(found.contains(&vec![0, 1, 0, -1]));
        for b in &basis {
            assert!(check_kernel_vector(&g, b).unwrap());
            let ints = b.to_i64s().unwrap();
            assert!(ints == vec![1, 0, -1, 0] || ints == vec![0, 1, 0, -1]);
        }
    }

    #[test]
    fn seed_kernel_matches_listed_vector() {
        let basis = kernel_basis(&seed_2_7());
        assert_eq!(basis.len(), 1);
        let listed = KernelVector::from_ints(&[1, 1, -1, -2, 1, 1, -1, -1, 1]);
        assert_eq!(basis[0], listed);
        assert!(kernel_basis(&Graph::complete(4)).is_empty());
    }

    #[test]
    fn check_kernel_vector_cases() {
        let g = seed_2_7();
        let mut x = vec![1, 1, -1, -2, 1, 1, -1, -1, 1];
        assert!(check_kernel_vector(&g, &KernelVector::from_ints(&x)).unwrap());
        x[3] = 2;
        assert!(!check_kernel_vector(&g, &KernelVector::from_ints(&x)).unwrap());
        assert!(!check_kernel_vector(&g, &KernelVector::from_ints(&[0; 9])).unwrap());
        assert_eq!(
            check_kernel_vector(&g, &KernelVector::from_ints(&[1; 4])),
            Err(Error::DimensionMismatch { expected: 9, found: 4 })
        );
    }

    #[test]
    fn verify_examples() {
        let cert = verify_nut(&seed_2_7());
        assert!(cert.is_nut && cert.is_chemical_nut);
        assert_eq!(cert.nullity, 1);
        let c12 = verify_nut(&Graph::cycle(12));
        assert!(!c12.is_nut);
        assert_eq!(c12.nullity, 2);
        let c5 = verify_nut(&Graph::cycle(5));
        assert!(!c5.is_nut);
        assert_eq!(c5.nullity, 0);
        // K1 has nullity 1 with kernel [1] but is excluded
        let k1 = verify_nut(&Graph::empty(1));
        assert_eq!(k1.nullity, 1);
        assert!(!k1.is_nut);
    }

    #[test]
    fn normalisation() {
        let v = KernelVector::from_ints(&[0, -4, 6, 2]);
        assert_eq!(v.normalised().to_i64s().unwrap(), vec![0, 2, -3, -1]);
        assert!(v.equal_up_to_scale(&KernelVector::from_ints(&[0, 2, -3, -1])));
    }

    #[test]
    fn certificate_json_uses_decimal_strings() {
        let json = verify_nut(&seed_2_7()).to_json();
        assert_eq!(json["order"], 9);
        assert_eq!(json["nullity"], 1);
        assert_eq!(json["kernel"][3], "-2");
    }
}
