//! Arithmetic in the prime field `Z_p` and the number-theoretic predicates the
//! design constructions rely on: primitive roots, subgroups of roots of unity,
//! power residues and discrete logarithms.
//!
//! Elements are plain `u64` residues in `[0, p)`. All multiplications go
//! through `u128`, so any prime that fits in a `u64` is safe, although the
//! discrete logarithm is only meant for desk-scale moduli (below `2^40`).

use std::collections::HashMap;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{k} does not divide the group order {order}")]
    NotDivisor { k: u64, order: u64 },
    #[error("zero is not a unit of the field")]
    ZeroInput,
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Deterministic Miller-Rabin.
///
/// The first seven prime witnesses are exact below 341 550 071 728 321; above
/// that the first twelve primes are used, which covers every `u64`.
pub fn is_prime(n: u64) -> bool {
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &q in &SMALL {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let witnesses: &[u64] = if n < 341_550_071_728_321 { &SMALL[..7] } else { &SMALL };
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in witnesses {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorisation by trial division, as `(prime, multiplicity)` pairs in
/// ascending order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Smallest generator of the multiplicative group of `Z_p`.
///
/// For `p = 2` the group is trivial and `1` is returned.
pub fn find_primitive_root(p: u64) -> Result<u64, AlgebraError> {
    if !is_prime(p) {
        return Err(AlgebraError::NotPrime(p));
    }
    if p == 2 {
        return Ok(1);
    }
    let primes: Vec<u64> = factorize(p - 1).into_iter().map(|(q, _)| q).collect();
    Ok((2..p)
        .find(|&g| primes.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("every prime field has a primitive element"))
}

/// The field `Z_p` together with its canonical (smallest) primitive element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    omega: u64,
    order_primes: Vec<u64>,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, AlgebraError> {
        let omega = find_primitive_root(p)?;
        let order_primes = factorize(p - 1).into_iter().map(|(q, _)| q).collect();
        Ok(Self { p, omega, order_primes })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// The primitive element `omega`.
    #[inline]
    pub fn omega(&self) -> u64 {
        self.omega
    }

    /// Order of the multiplicative group, `p - 1`.
    #[inline]
    pub fn group_order(&self) -> u64 {
        self.p - 1
    }

    /// Maps any integer (including negatives) to its residue in `[0, p)`.
    pub fn reduce(&self, x: i128) -> u64 {
        x.rem_euclid(self.p as i128) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.p as u128) as u64
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + self.p as u128 - (b % self.p) as u128) % self.p as u128) as u64
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.p)
    }

    #[inline]
    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.p)
    }

    pub fn inv(&self, a: u64) -> Result<u64, AlgebraError> {
        if a.is_multiple_of(self.p) {
            return Err(AlgebraError::ZeroInput);
        }
        Ok(self.pow(a, self.p - 2))
    }

    /// `omega^c`, with the exponent taken modulo `p - 1` (negative allowed).
    pub fn omega_pow(&self, c: i64) -> u64 {
        let e = (c as i128).rem_euclid(self.group_order() as i128) as u64;
        self.pow(self.omega, e)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, x: u64) -> Result<u64, AlgebraError> {
        if x.is_multiple_of(self.p) {
            return Err(AlgebraError::ZeroInput);
        }
        let mut order = self.group_order();
        for &q in &self.order_primes {
            while order.is_multiple_of(q) && self.pow(x, order / q) == 1 {
                order /= q;
            }
        }
        Ok(order)
    }

    /// The subgroup of order `k`, listed as successive powers
    /// `1, z, z^2, ..., z^(k-1)` of `z = omega^((p-1)/k)`.
    pub fn kth_roots_of_unity(&self, k: u64) -> Result<Vec<u64>, AlgebraError> {
        let order = self.group_order();
        if k == 0 || !order.is_multiple_of(k) {
            return Err(AlgebraError::NotDivisor { k, order });
        }
        let z = self.pow(self.omega, order / k);
        let mut out = Vec::with_capacity(k as usize);
        let mut x = 1;
        for _ in 0..k {
            out.push(x);
            x = self.mul(x, z);
        }
        Ok(out)
    }

    /// Whether `x = y^n` for some `y` in the field.
    pub fn is_nth_power(&self, x: u64, n: u64) -> Result<bool, AlgebraError> {
        if x.is_multiple_of(self.p) {
            return Err(AlgebraError::ZeroInput);
        }
        let order = self.group_order();
        let g = gcd(n, order);
        if g == 0 {
            // n == 0: only 1 = y^0.
            return Ok(x % self.p == 1);
        }
        Ok(self.pow(x, order / g) == 1)
    }

    /// Discrete logarithm to base `omega` by baby-step giant-step; the result
    /// lies in `[0, p - 2]`.
    pub fn discrete_log(&self, x: u64) -> Result<u64, AlgebraError> {
        let x = x % self.p;
        if x == 0 {
            return Err(AlgebraError::ZeroInput);
        }
        let order = self.group_order();
        let m = (order as f64).sqrt().ceil() as u64 + 1;
        let mut baby = HashMap::with_capacity(m as usize);
        let mut e = 1u64;
        for j in 0..m {
            baby.entry(e).or_insert(j);
            e = self.mul(e, self.omega);
        }
        // omega^(-m)
        let giant = self.pow(self.inv(self.omega)?, m);
        let mut gamma = x;
        for i in 0..=m {
            if let Some(&j) = baby.get(&gamma) {
                return Ok((i * m + j) % order);
            }
            gamma = self.mul(gamma, giant);
        }
        unreachable!("omega generates the whole group")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn primes_up_to(n: u64) -> Vec<u64> {
        (2..=n)
            .filter(|&x| (2..x).take_while(|d| d * d <= x).all(|d| x % d != 0))
            .collect()
    }

    #[test]
    fn primality_matches_sieve() {
        let sieve = primes_up_to(5000);
        let mr: Vec<u64> = (0..=5000).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieve, mr);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(341_550_071_728_321));
        assert!(is_prime(18_446_744_073_709_551_557));
    }

    #[test]
    fn primitive_root_examples() {
        assert_eq!(find_primitive_root(7), Ok(3));
        assert_eq!(find_primitive_root(13), Ok(2));
        assert_eq!(find_primitive_root(2), Ok(1));
        assert_eq!(find_primitive_root(73), Ok(5));
        assert_eq!(find_primitive_root(15), Err(AlgebraError::NotPrime(15)));
    }

    #[test]
    fn primitive_root_has_full_order_and_is_smallest() {
        for p in primes_up_to(10_000).into_iter().filter(|&p| p > 2) {
            let f = PrimeField::new(p).unwrap();
            let g = f.omega();
            // direct exponentiation
            let mut x = g;
            let mut ord = 1;
            while x != 1 {
                x = f.mul(x, g);
                ord += 1;
            }
            assert_eq!(ord, p - 1, "p = {p}");
            for h in 2..g {
                assert_ne!(f.order_of(h).unwrap(), p - 1, "p = {p}, smaller root {h}");
            }
        }
    }

    #[test]
    fn roots_of_unity_examples() {
        let f73 = PrimeField::new(73).unwrap();
        let mut r = f73.kth_roots_of_unity(9).unwrap();
        r.sort_unstable();
        assert_eq!(r, vec![1, 2, 4, 8, 16, 32, 37, 55, 64]);
        // 2 has order 9 mod 73 (repeated squaring: 2^9 = 512 = 7*73 + 1)
        assert_eq!(pow_mod(2, 9, 73), 1);
        assert_eq!(f73.order_of(2).unwrap(), 9);

        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f7.kth_roots_of_unity(1).unwrap(), vec![1]);

        let f13 = PrimeField::new(13).unwrap();
        let mut cubes = f13.kth_roots_of_unity(3).unwrap();
        cubes.sort_unstable();
        assert_eq!(cubes, vec![1, 3, 9]);

        assert_eq!(
            f13.kth_roots_of_unity(5),
            Err(AlgebraError::NotDivisor { k: 5, order: 12 })
        );
    }

    #[test]
    fn nth_power_examples() {
        let f = PrimeField::new(13).unwrap();
        let cubes: Vec<u64> = {
            let mut c: Vec<u64> = (1..13).map(|y| pow_mod(y, 3, 13)).collect();
            c.sort_unstable();
            c.dedup();
            c
        };
        assert_eq!(cubes, vec![1, 5, 8, 12]);
        assert_eq!(f.is_nth_power(3, 3), Ok(false));
        assert_eq!(f.is_nth_power(12, 3), Ok(true));
        for n in 1..20 {
            assert_eq!(f.is_nth_power(1, n), Ok(true));
        }
        assert_eq!(f.is_nth_power(26, 2), Err(AlgebraError::ZeroInput));
    }

    #[test]
    fn nth_power_agrees_with_enumeration() {
        for p in primes_up_to(101) {
            let f = PrimeField::new(p).unwrap();
            for n in 1..=12u64 {
                let powers: std::collections::HashSet<u64> = (1..p).map(|y| pow_mod(y, n, p)).collect();
                for x in 1..p {
                    assert_eq!(f.is_nth_power(x, n).unwrap(), powers.contains(&x), "p={p} n={n} x={x}");
                }
            }
        }
    }

    #[test]
    fn discrete_log_examples() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.omega(), 3);
        assert_eq!(f.discrete_log(1), Ok(0));
        assert_eq!(f.discrete_log(3), Ok(1));
        assert_eq!(f.discrete_log(6), Ok(3));
        assert_eq!(f.discrete_log(0), Err(AlgebraError::ZeroInput));
        assert_eq!(f.omega_pow(-1), 5);
    }

    #[test]
    fn discrete_log_inverts_exponentiation() {
        for p in [2u64, 3, 5, 7, 13, 61, 101, 997, 7919] {
            let f = PrimeField::new(p).unwrap();
            for x in 1..p {
                let c = f.discrete_log(x).unwrap();
                assert!(c <= p - 2 || p == 2);
                assert_eq!(f.pow(f.omega(), c), x);
            }
        }
        let big = PrimeField::new(1_099_511_627_689).unwrap();
        let c = big.discrete_log(123_456_789).unwrap();
        assert_eq!(big.pow(big.omega(), c), 123_456_789);
    }

    proptest! {
        #[test]
        fn roots_of_unity_closed_under_multiplication(idx in 0usize..200, kpick in 0usize..16) {
            let primes = primes_up_to(1300);
            let p = primes[idx % primes.len()];
            let f = PrimeField::new(p).unwrap();
            let divisors: Vec<u64> = (1..p).filter(|d| (p - 1).is_multiple_of(*d)).collect();
            let k = divisors[kpick % divisors.len()];
            let roots = f.kth_roots_of_unity(k).unwrap();
            let set: std::collections::HashSet<u64> = roots.iter().copied().collect();
            prop_assert_eq!(set.len() as u64, k);
            for &a in &roots {
                for &b in &roots {
                    prop_assert!(set.contains(&f.mul(a, b)));
                }
            }
        }

        #[test]
        fn dlog_round_trip(idx in 0usize..1000, x in 1u64..u64::MAX) {
            let primes = primes_up_to(8000);
            let p = primes[idx % primes.len()];
            let f = PrimeField::new(p).unwrap();
            let x = x % p;
            prop_assume!(x != 0);
            let c = f.discrete_log(x).unwrap();
            prop_assert_eq!(f.omega_pow(c as i64), x);
        }
    }
}
