//! Root systems of the Dynkin catalog in simple-root coordinates.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::dynkin::DynkinType;
use crate::error::{Error, Result};

/// Coefficients over the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RootVector(pub Vec<i64>);

impl RootVector {
    pub fn simple(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        RootVector(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn neg(&self) -> Self {
        RootVector(self.0.iter().map(|c| -c).collect())
    }

    /// `self - c * other`.
    fn sub_scaled(&self, c: i64, other: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&other.0).map(|(a, b)| a - c * b).collect())
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub ty: DynkinType,
    pub cartan: Vec<Vec<i64>>,
    /// Gram matrix `(α_i, α_j)`, short roots of squared length 2.
    pub form: Vec<Vec<i64>>,
    /// `d_i = (α_i, α_i) / 2`.
    pub symmetriser: Vec<i64>,
    pub roots: Vec<RootVector>,
    members: HashSet<RootVector>,
}

/// Closes the simple roots under the simple reflections. Roots come out in
/// lexicographic order of coordinates.
pub fn build_root_system(ty: DynkinType) -> Result<RootSystem> {
    let ty = ty.new_checked()?;
    let n = ty.rank();
    let cartan = ty.cartan_matrix();
    let form = ty.gram_matrix();
    let symmetriser = (0..n).map(|i| form[i][i] / 2).collect();
    let mut members: HashSet<RootVector> = HashSet::new();
    let mut stack: Vec<RootVector> = (0..n).map(|i| RootVector::simple(n, i)).collect();
    members.extend(stack.iter().cloned());
    while let Some(beta) = stack.pop() {
        for j in 0..n {
            let c: i64 = (0..n).map(|i| beta.0[i] * cartan[i][j]).sum();
            let image = beta.sub_scaled(c, &RootVector::simple(n, j));
            if members.insert(image.clone()) {
                stack.push(image);
            }
        }
    }
    let roots: Vec<RootVector> = members.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    Ok(RootSystem {
        ty,
        cartan,
        form,
        symmetriser,
        roots,
        members,
    })
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, v: &RootVector) -> bool {
        self.members.contains(v)
    }

    fn check_rank(&self, v: &RootVector) -> Result<()> {
        if v.0.len() != self.rank() {
            return Err(Error::RankMismatch {
                left: v.0.len(),
                right: self.rank(),
            });
        }
        Ok(())
    }

    /// `(β, γ)`.
    pub fn pairing(&self, beta: &RootVector, gamma: &RootVector) -> Result<i64> {
        self.check_rank(beta)?;
        self.check_rank(gamma)?;
        let n = self.rank();
        let mut total: i64 = 0;
        for i in 0..n {
            if beta.0[i] == 0 {
                continue;
            }
            for j in 0..n {
                let t = beta.0[i]
                    .checked_mul(self.form[i][j])
                    .and_then(|x| x.checked_mul(gamma.0[j]))
                    .ok_or(Error::Overflow)?;
                total = total.checked_add(t).ok_or(Error::Overflow)?;
            }
        }
        Ok(total)
    }

    /// `(β, γ∨) = 2(β, γ) / (γ, γ)`.
    pub fn copairing(&self, beta: &RootVector, gamma: &RootVector) -> Result<Ratio<i64>> {
        if gamma.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(Ratio::new(2 * self.pairing(beta, gamma)?, self.pairing(gamma, gamma)?))
    }

    /// `(β, γ∨)` for a root `γ`, which is always an integer on the root
    /// lattice.
    pub fn copairing_int(&self, beta: &RootVector, gamma: &RootVector) -> Result<i64> {
        if !self.contains(gamma) {
            return Err(Error::NotARoot(gamma.to_string()));
        }
        let r = self.copairing(beta, gamma)?;
        if !r.is_integer() {
            return Err(Error::Internal(format!("non-integral copairing ({beta}, {gamma}∨)")));
        }
        Ok(r.to_integer())
    }

    /// `s_β(γ) = γ - (γ, β∨) β`.
    pub fn reflect(&self, beta: &RootVector, gamma: &RootVector) -> Result<RootVector> {
        let c = self.copairing_int(gamma, beta)?;
        Ok(gamma.sub_scaled(c, beta))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> RootVector {
        RootVector(c.to_vec())
    }

    /// Lattice vectors of a root length, with long ones restricted to
    /// `k_i (α_i, α_i) / L` integral.
    fn brute_force_roots(ty: DynkinType, bound: i64) -> BTreeSet<RootVector> {
        let s = build_root_system(ty).unwrap();
        let n = s.rank();
        let lengths: BTreeSet<i64> = (0..n).map(|i| s.form[i][i]).collect();
        let mut out = BTreeSet::new();
        let mut coords = vec![-bound; n];
        loop {
            let r = RootVector(coords.clone());
            let len = s.pairing(&r, &r).unwrap();
            if lengths.contains(&len) && (0..n).all(|i| (coords[i] * s.form[i][i]) % len == 0) {
                out.insert(r);
            }
            let mut t = 0;
            loop {
                if t == n {
                    return out;
                }
                coords[t] += 1;
                if coords[t] <= bound {
                    break;
                }
                coords[t] = -bound;
                t += 1;
            }
        }
    }

    #[test]
    fn a2_roots() {
        let s = build_root_system(DynkinType::A(2)).unwrap();
        assert_eq!(
            s.roots,
            vec![v(&[-1, -1]), v(&[-1, 0]), v(&[0, -1]), v(&[0, 1]), v(&[1, 0]), v(&[1, 1])]
        );
    }

    #[test]
    fn closure_matches_brute_force() {
        let types = [
            DynkinType::A(2),
            DynkinType::A(4),
            DynkinType::B(2),
            DynkinType::B(3),
            DynkinType::C(3),
            DynkinType::B(4),
            DynkinType::C(4),
            DynkinType::D(4),
            DynkinType::D(5),
            DynkinType::F4,
            DynkinType::G2,
        ];
        for ty in types {
            let s = build_root_system(ty).unwrap();
            let expect = brute_force_roots(ty, 4);
            assert_eq!(s.roots.iter().cloned().collect::<BTreeSet<_>>(), expect, "{ty}");
        }
        assert_eq!(build_root_system(DynkinType::G2).unwrap().len(), 12);
        assert_eq!(build_root_system(DynkinType::B(2)).unwrap().len(), 8);
    }

    #[test]
    fn root_counts() {
        for n in 1..=7 {
            assert_eq!(build_root_system(DynkinType::A(n)).unwrap().len(), n * (n + 1));
        }
        for n in 2..=6 {
            assert_eq!(build_root_system(DynkinType::B(n)).unwrap().len(), 2 * n * n);
            assert_eq!(build_root_system(DynkinType::C(n)).unwrap().len(), 2 * n * n);
        }
        for n in 4..=7 {
            assert_eq!(build_root_system(DynkinType::D(n)).unwrap().len(), 2 * n * (n - 1));
        }
        assert_eq!(build_root_system(DynkinType::E(6)).unwrap().len(), 72);
        assert_eq!(build_root_system(DynkinType::E(7)).unwrap().len(), 126);
        assert_eq!(build_root_system(DynkinType::E(8)).unwrap().len(), 240);
        assert_eq!(build_root_system(DynkinType::F4).unwrap().len(), 48);
    }

    #[test]
    fn pairings() {
        let a2 = build_root_system(DynkinType::A(2)).unwrap();
        let (a1, a2v) = (v(&[1, 0]), v(&[0, 1]));
        assert_eq!(a2.copairing_int(&a1, &a2v).unwrap(), -1);
        assert_eq!(a2.reflect(&a1, &a1).unwrap(), v(&[-1, 0]));
        assert_eq!(a2.reflect(&a2v, &a1).unwrap(), v(&[1, 1]));
        assert_eq!(a2.copairing(&a1, &v(&[0, 0])), Err(Error::ZeroVector));
        assert!(matches!(a2.reflect(&v(&[2, 0]), &a1), Err(Error::NotARoot(_))));
        // B2: α1 long, α2 short
        let b2 = build_root_system(DynkinType::B(2)).unwrap();
        let (long, short) = (v(&[1, 0]), v(&[0, 1]));
        assert_eq!(b2.copairing_int(&short, &long).unwrap(), -1);
        assert_eq!(b2.copairing_int(&long, &short).unwrap(), -2);
    }

    #[test]
    fn cartan_convention() {
        for ty in [DynkinType::B(3), DynkinType::C(3), DynkinType::F4, DynkinType::G2] {
            let s = build_root_system(ty).unwrap();
            let n = s.rank();
            for i in 0..n {
                for j in 0..n {
                    let c = s.copairing_int(&RootVector::simple(n, i), &RootVector::simple(n, j)).unwrap();
                    assert_eq!(c, s.cartan[i][j]);
                }
            }
        }
    }

    #[test]
    fn every_root_has_integral_simple_pairings() {
        for ty in [DynkinType::B(4), DynkinType::F4, DynkinType::G2, DynkinType::E(6)] {
            let s = build_root_system(ty).unwrap();
            for beta in &s.roots {
                assert_eq!(s.copairing_int(beta, beta).unwrap(), 2);
                for j in 0..s.rank() {
                    s.copairing_int(beta, &RootVector::simple(s.rank(), j)).unwrap();
                }
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn reflections_preserve_roots(a in 0usize..48, b in 0usize..48) {
            let s = build_root_system(DynkinType::F4).unwrap();
            let (beta, gamma) = (&s.roots[a % s.len()], &s.roots[b % s.len()]);
            let image = s.reflect(beta, gamma).unwrap();
            proptest::prop_assert!(s.contains(&image));
            proptest::prop_assert_eq!(&s.reflect(beta, &image).unwrap(), gamma);
        }
    }
}
