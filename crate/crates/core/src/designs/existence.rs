//! Existence catalogue: the number-theoretic cases and the embedded tables
//! for cyclic, resolvable and cyclically resolvable designs with
//! `lambda = 1`.

use std::fmt;

use super::DesignError;
use crate::algebra::{factorize, is_prime, PrimeField};

/// `v` for which an RBIBD(v,5,1) is not known to exist.
pub const TABLE_I_K5: [u64; 4] = [45, 345, 465, 645];

/// `v` for which an RBIBD(v,8,1) is not known to exist.
pub const TABLE_I_K8: [u64; 66] = [
    176, 624, 736, 1128, 1240, 1296, 1408, 1464, 1520, 1576, 1744, 2136, 2416, 2640, 2920, 2976, 3256, 3312, 3424,
    3760, 3872, 4264, 4432, 5216, 5720, 5776, 6224, 6280, 6448, 6896, 6952, 7008, 7456, 7512, 7792, 7848, 8016, 9752,
    10200, 10704, 10760, 10928, 11040, 11152, 11376, 11656, 11712, 11824, 11936, 12216, 12328, 12496, 12552, 12720,
    12832, 12888, 13000, 13280, 13616, 13840, 13896, 14008, 14176, 14232, 21904, 24480,
];

/// Primes `p < 10^3` with a known CRCBIBD(5p,5,1).
pub const TABLE_II_K5: [u64; 13] = [41, 61, 241, 281, 401, 421, 601, 641, 661, 701, 761, 821, 881];

/// Primes `p < 10^4` with a known CRCBIBD(7p,7,1).
pub const TABLE_II_K7: [u64; 21] = [
    337, 421, 463, 883, 1723, 3067, 3319, 3823, 3907, 4621, 4957, 5167, 5419, 5881, 6133, 8233, 8527, 8821, 9619, 9787,
    9829,
];

/// Primes `p < 10^4` with a known CRCBIBD(9p,9,1).
pub const TABLE_II_K9: [u64; 7] = [73, 1153, 1873, 2017, 6481, 7489, 7561];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Existence {
    Exists,
    Unknown,
    Impossible,
}

impl fmt::Display for Existence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Existence::Exists => "Exists",
            Existence::Unknown => "Unknown",
            Existence::Impossible => "Impossible",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExistenceStatus {
    pub value: Existence,
    pub source: String,
}

impl ExistenceStatus {
    fn new(value: Existence, source: impl Into<String>) -> Self {
        Self {
            value,
            source: source.into(),
        }
    }

    pub fn exists(&self) -> bool {
        self.value == Existence::Exists
    }
}

impl fmt::Display for ExistenceStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.value, self.source)
    }
}

/// Parameters of the `(k, r)`-regular LDPC code built from a BIBD(v,k,1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LdpcParameters {
    pub v: u64,
    pub k: u64,
    pub r: u64,
    /// Code length `v r / k`, the number of blocks.
    pub n: u64,
    /// Design rate lower bound `(r - k) / r`.
    pub rate_bound: f64,
}

impl LdpcParameters {
    /// `None` unless `(k - 1) | (v - 1)` and `k | v r`.
    pub fn from_design(v: u64, k: u64) -> Option<Self> {
        if k < 2 || v < k || !(v - 1).is_multiple_of(k - 1) {
            return None;
        }
        let r = (v - 1) / (k - 1);
        if !(v * r).is_multiple_of(k) {
            return None;
        }
        Some(Self {
            v,
            k,
            r,
            n: v * r / k,
            rate_bound: (r as f64 - k as f64) / r as f64,
        })
    }

    /// `(k, r=R), N=n`.
    pub fn regularity_label(&self) -> String {
        format!("({}, r={}), N={}", self.k, self.r, self.n)
    }
}

fn v2(mut t: u64) -> u32 {
    let mut e = 0;
    while t.is_multiple_of(2) && t > 0 {
        t /= 2;
        e += 1;
    }
    e
}

fn v3(mut t: u64) -> u32 {
    let mut f = 0;
    while t.is_multiple_of(3) && t > 0 {
        t /= 3;
        f += 1;
    }
    f
}

/// `epsilon + 1` is not a `2^(e+1)`-th power, where `2^e || t` and
/// `epsilon` is a primitive fifth root of unity mod `p = 20t + 1`.
fn radical_k5_condition(field: &PrimeField) -> Result<bool, DesignError> {
    let p = field.modulus();
    let t = (p - 1) / 20;
    let eps = field.omega_pow(((p - 1) / 5) as i64);
    let n = 1u64 << (v2(t) + 1);
    Ok(!field.is_nth_power(field.add(eps, 1), n)?)
}

/// Some `f` with `3^f | t` makes `epsilon + 1`, `epsilon^2 + epsilon + 1`
/// and their quotient `3^f`-th powers but not `3^(f+1)`-th powers, with
/// `epsilon` a primitive seventh root of unity mod `p = 42t + 1`.
fn radical_k7_condition(field: &PrimeField) -> Result<bool, DesignError> {
    let p = field.modulus();
    let t = (p - 1) / 42;
    let eps = field.omega_pow(((p - 1) / 7) as i64);
    let a = field.add(eps, 1);
    let b = field.add(field.add(field.mul(eps, eps), eps), 1);
    let c = field.mul(b, field.inv(a)?);
    let mut pow3 = 1u64;
    for _ in 0..=v3(t) {
        let mut ok = true;
        for x in [a, b, c] {
            if !field.is_nth_power(x, pow3)? || field.is_nth_power(x, 3 * pow3)? {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(true);
        }
        pow3 *= 3;
    }
    Ok(false)
}

fn crcbibd_prime(p: u64, k: u64) -> Result<ExistenceStatus, DesignError> {
    use Existence::*;
    let field = PrimeField::new(p)?;
    Ok(match k {
        3 => ExistenceStatus::new(Exists, "radical family for every p = 1 (mod 6)"),
        4 => {
            if ((p - 1) / 12) % 2 == 1 {
                ExistenceStatus::new(Exists, "CRCBIBD(4p,4,1) for p = 12t + 1 with t odd")
            } else {
                ExistenceStatus::new(Unknown, "k = 4 with t even is not covered")
            }
        }
        5 => {
            if TABLE_II_K5.contains(&p) {
                ExistenceStatus::new(Exists, "Table II, k = 5")
            } else if radical_k5_condition(&field)? {
                ExistenceStatus::new(Exists, "RDF(p,5,1): epsilon + 1 is not a 2^(e+1)-th power")
            } else {
                ExistenceStatus::new(Unknown, "RDF(p,5,1) power condition fails")
            }
        }
        7 => {
            if TABLE_II_K7.contains(&p) {
                ExistenceStatus::new(Exists, "Table II, k = 7")
            } else if radical_k7_condition(&field)? {
                ExistenceStatus::new(Exists, "RDF(p,7,1): 3^f-th power condition holds")
            } else {
                ExistenceStatus::new(Unknown, "RDF(p,7,1) power condition fails")
            }
        }
        9 => {
            if TABLE_II_K9.contains(&p) {
                ExistenceStatus::new(Exists, "Table II, k = 9")
            } else {
                ExistenceStatus::new(Unknown, "not listed in Table II, k = 9")
            }
        }
        _ => ExistenceStatus::new(Unknown, format!("no case for k = {k}")),
    })
}

/// Existence of a CRCBIBD(lk,k,1) for `k` in `{3, 4, 5, 7, 9}`.
///
/// `l` may be prime or a product of primes; a product qualifies when every
/// prime factor does.
pub fn crcbibd_exists(l: u64, k: u64) -> Result<ExistenceStatus, DesignError> {
    if k < 3 || l < 2 {
        return Err(DesignError::BadModulus {
            modulus: l,
            reason: format!("need k >= 3 and l >= 2 (k = {k})"),
        });
    }
    let kk = k * (k - 1);
    let factors = factorize(l);
    if let Some(&(q, _)) = factors.iter().find(|(q, _)| q % kk != 1) {
        return Err(DesignError::BadModulus {
            modulus: l,
            reason: format!("prime factor {q} is not 1 (mod {kk})"),
        });
    }
    if factors.len() == 1 && factors[0].1 == 1 {
        return crcbibd_prime(l, k);
    }
    for &(q, _) in &factors {
        let status = crcbibd_prime(q, k)?;
        if !status.exists() {
            return Ok(ExistenceStatus::new(
                Existence::Unknown,
                format!("prime factor {q}: {}", status.source),
            ));
        }
    }
    Ok(ExistenceStatus::new(
        Existence::Exists,
        "product of primes that each admit a CRCBIBD",
    ))
}

fn is_prime_power_of(x: u64, q: u64) -> bool {
    let mut x = x;
    while x.is_multiple_of(q) {
        x /= q;
    }
    x == 1
}

/// Existence of an RBIBD(v,k,1).
pub fn rbibd_existence_status(v: u64, k: u64) -> ExistenceStatus {
    use Existence::*;
    if k < 2 || v < k || !(v - 1).is_multiple_of(k - 1) || !v.is_multiple_of(k) {
        return ExistenceStatus::new(
            Impossible,
            "necessary conditions (v-1) = 0 (mod k-1), v = 0 (mod k) fail",
        );
    }
    let kf = factorize(k);
    if kf.len() == 1 && is_prime_power_of(v, kf[0].0) {
        return ExistenceStatus::new(Exists, "v and k are powers of the same prime");
    }
    let step = k * (k - 1);
    let in_class = v % step == k % step;
    match k {
        3 if in_class => ExistenceStatus::new(Exists, "RBIBD(6t+3,3,1)"),
        4 if in_class => ExistenceStatus::new(Exists, "RBIBD(12t+4,4,1)"),
        5 if in_class => {
            if TABLE_I_K5.contains(&v) {
                ExistenceStatus::new(Unknown, "Table I, k = 5")
            } else {
                ExistenceStatus::new(Exists, "RBIBD(20t+5,5,1)")
            }
        }
        8 if in_class => {
            if TABLE_I_K8.contains(&v) {
                ExistenceStatus::new(Unknown, "Table I, k = 8")
            } else {
                ExistenceStatus::new(Exists, "RBIBD(56t+8,8,1)")
            }
        }
        _ => ExistenceStatus::new(Unknown, "no covering case"),
    }
}

/// Existence of a CDF(v,k,1) with all orbits full (`v = 1 mod k(k-1)`).
pub fn cdf_existence_status(v: u64, k: u64) -> ExistenceStatus {
    use Existence::*;
    if k < 2 || v < k || !(v - 1).is_multiple_of(k - 1) || !(v * (v - 1)).is_multiple_of(k * (k - 1)) {
        return ExistenceStatus::new(Impossible, "necessary conditions for a BIBD(v,k,1) fail");
    }
    let step = k * (k - 1);
    if v % step != 1 {
        return ExistenceStatus::new(Unknown, format!("v is not 1 (mod {step})"));
    }
    let prime = is_prime(v);
    let t = (v - 1) / step;
    match k {
        3..=5 if prime => ExistenceStatus::new(Exists, format!("CDF(p,{k},1) for every prime p = 1 (mod {step})")),
        6 if prime && t != 2 => ExistenceStatus::new(Exists, "CDF(30t+1,6,1), t != 2"),
        7 if prime && t > 1 => {
            if v == 127 || v == 211 {
                return ExistenceStatus::new(Unknown, "possible exception for k = 7");
            }
            if (261_239_791..=12_365_970_000_000).contains(&v) {
                let field = PrimeField::new(v).expect("prime");
                if field.pow(v - 3, (v - 1) / 14) == 1 {
                    return ExistenceStatus::new(Unknown, "possible exception range for k = 7");
                }
            }
            ExistenceStatus::new(Exists, "CDF(42t+1,7,1), t > 1")
        }
        8 if v < 10_000 => {
            if [113, 169, 281, 337].contains(&v) {
                ExistenceStatus::new(Unknown, "possible exception for k = 8")
            } else {
                ExistenceStatus::new(Exists, "CDF(v,8,1), v = 1 (mod 56) below 10^4")
            }
        }
        9 if v < 10_000 => {
            if [289, 361].contains(&v) {
                ExistenceStatus::new(Unknown, "possible exception for k = 9")
            } else {
                ExistenceStatus::new(Exists, "CDF(v,9,1), v = 1 (mod 72) below 10^4")
            }
        }
        _ => ExistenceStatus::new(Unknown, "no covering case"),
    }
}
