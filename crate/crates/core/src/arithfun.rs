//! Sieved tables of arithmetical functions and their prefix sums.
//!
//! Every table holds exact rational values of one function `g` on `1..=n_max`,
//! computed by a smallest-prime-factor linear sieve (O(n_max) multiplications,
//! integer arithmetic throughout, converted to rationals once at the end).
//! The rational-valued `smith_g` needs no special casing because all tables
//! share the rational domain.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Rat;

/// Hard cap on sieve size; keeps memory bounded and predictable.
pub const MAX_SIEVE_N: usize = 1_000_000;

/// Identifier of a built-in arithmetical function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FunctionKind {
    /// Constant 1.
    One,
    /// Identity, g(k) = k.
    Id,
    /// Möbius μ.
    Mobius,
    /// Liouville λ(k) = (−1)^Ω(k).
    Liouville,
    /// Ω(k), number of prime factors counted with multiplicity.
    BigOmega,
    /// Divisor count τ.
    Tau,
    /// Divisor sum σ.
    Sigma,
    /// Euler totient φ.
    Phi,
    /// Smith's g(k) = (1/k)·Σ_{d|k} d·μ(d); satisfies Σ_{d|m} g(d) = 1/m.
    SmithG,
    /// Totally multiplicative function given by its values at primes.
    User,
}

impl FunctionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FunctionKind::One => "one",
            FunctionKind::Id => "id",
            FunctionKind::Mobius => "mobius",
            FunctionKind::Liouville => "liouville",
            FunctionKind::BigOmega => "big_omega",
            FunctionKind::Tau => "tau",
            FunctionKind::Sigma => "sigma",
            FunctionKind::Phi => "phi",
            FunctionKind::SmithG => "smith_g",
            FunctionKind::User => "user",
        }
    }

    /// Whether tables of this kind claim g(ab) = g(a)·g(b) for all a, b.
    fn claims_totally_multiplicative(self) -> bool {
        matches!(
            self,
            FunctionKind::One | FunctionKind::Id | FunctionKind::Liouville | FunctionKind::User
        )
    }
}

impl fmt::Display for FunctionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FunctionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "one" => FunctionKind::One,
            "id" => FunctionKind::Id,
            "mobius" => FunctionKind::Mobius,
            "liouville" => FunctionKind::Liouville,
            "big_omega" => FunctionKind::BigOmega,
            "tau" => FunctionKind::Tau,
            "sigma" => FunctionKind::Sigma,
            "phi" => FunctionKind::Phi,
            "smith_g" => FunctionKind::SmithG,
            "user" => FunctionKind::User,
            other => return Err(Error::UnknownKind(other.to_string())),
        })
    }
}

/// A function identifier together with the prime values a `user` function needs.
///
/// Serializes as the bare kind name, or as `user:p1=v1,p2=v2,...` with
/// rationals written `a/b` (bare integers when the denominator is 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionSpec {
    Named(FunctionKind),
    User(BTreeMap<u64, Rat>),
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionSpec::Named(kind) => write!(f, "{kind}"),
            FunctionSpec::User(map) => {
                f.write_str("user:")?;
                for (idx, (p, v)) in map.iter().enumerate() {
                    if idx > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{p}={v}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for FunctionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(body) = s.strip_prefix("user:") {
            let mut map = BTreeMap::new();
            for item in body.split(',') {
                let (p, v) = item
                    .split_once('=')
                    .ok_or_else(|| Error::BadUserSpec(s.to_string()))?;
                let p: u64 = p.trim().parse().map_err(|_| Error::BadUserSpec(s.to_string()))?;
                let v = crate::format::parse_rat(v.trim())?;
                map.insert(p, v);
            }
            if map.is_empty() {
                return Err(Error::BadUserSpec(s.to_string()));
            }
            Ok(FunctionSpec::User(map))
        } else if s == "user" {
            Err(Error::BadUserSpec(
                "user kind needs prime values, e.g. user:2=1/2,3=-1".to_string(),
            ))
        } else {
            Ok(FunctionSpec::Named(s.parse()?))
        }
    }
}

impl FunctionSpec {
    pub fn kind(&self) -> FunctionKind {
        match self {
            FunctionSpec::Named(kind) => *kind,
            FunctionSpec::User(_) => FunctionKind::User,
        }
    }
}

/// Exact values of one arithmetical function on `1..=n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionTable {
    kind: FunctionKind,
    n_max: usize,
    values: Vec<Rat>, // values[k-1] = g(k)
    claims_totally_multiplicative: bool,
    user_values: Option<BTreeMap<u64, Rat>>,
}

impl FunctionTable {
    /// Sieve the function `kind` up to `n_max`.
    ///
    /// `user_prime_values` must be present exactly when `kind` is `user`,
    /// and must cover every prime ≤ n_max.
    pub fn build(
        kind: FunctionKind,
        n_max: usize,
        user_prime_values: Option<&BTreeMap<u64, Rat>>,
    ) -> Result<Self> {
        if n_max == 0 {
            return Err(Error::EmptyTable);
        }
        if n_max > MAX_SIEVE_N {
            return Err(Error::SieveCapExceeded(n_max));
        }
        match (kind, user_prime_values) {
            (FunctionKind::User, None) => return Err(Error::MissingPrimeValues),
            (FunctionKind::User, Some(_)) => {}
            (_, Some(_)) => return Err(Error::UnexpectedPrimeValues(kind.to_string())),
            (_, None) => {}
        }

        let spf = spf_sieve(n_max);
        let values = match kind {
            FunctionKind::User => sieve_user(n_max, &spf, user_prime_values.unwrap())?,
            _ => sieve_named(kind, n_max, &spf),
        };
        debug_assert_eq!(values.len(), n_max);
        Ok(FunctionTable {
            kind,
            n_max,
            values,
            claims_totally_multiplicative: kind.claims_totally_multiplicative(),
            user_values: user_prime_values.cloned(),
        })
    }

    pub fn from_spec(spec: &FunctionSpec, n_max: usize) -> Result<Self> {
        match spec {
            FunctionSpec::Named(kind) => Self::build(*kind, n_max, None),
            FunctionSpec::User(map) => Self::build(FunctionKind::User, n_max, Some(map)),
        }
    }

    pub fn kind(&self) -> FunctionKind {
        self.kind
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn claims_totally_multiplicative(&self) -> bool {
        self.claims_totally_multiplicative
    }

    /// g(k) for 1 ≤ k ≤ n_max. Panics out of range; callers bounds-check
    /// against `n_max()` and report `Error::TableTooShort` themselves.
    pub fn value(&self, k: usize) -> &Rat {
        &self.values[k - 1]
    }

    pub fn get(&self, k: usize) -> Option<&Rat> {
        if k == 0 {
            None
        } else {
            self.values.get(k - 1)
        }
    }

    /// All values; `values()[k-1]` is g(k).
    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    /// The identifier this table round-trips through (`phi`, `user:2=1/2,...`).
    pub fn spec(&self) -> FunctionSpec {
        match &self.user_values {
            Some(map) => FunctionSpec::User(map.clone()),
            None => FunctionSpec::Named(self.kind),
        }
    }

    /// Same function, larger table. User tables cannot be extended because
    /// their prime map only covers primes ≤ the original n_max.
    pub fn extended(&self, n_max: usize) -> Result<Self> {
        if n_max <= self.n_max {
            return Ok(self.clone());
        }
        match self.kind {
            FunctionKind::User => Err(Error::TableTooShort {
                kind: self.spec().to_string(),
                have: self.n_max,
                need: n_max,
            }),
            kind => Self::build(kind, n_max, None),
        }
    }

    /// Exhaustive check: `values[1] = 1` and `values[a·b] = values[a]·values[b]`
    /// for every pair with a·b ≤ n_max.
    pub fn is_totally_multiplicative(&self) -> bool {
        if !self.value(1).is_one() {
            return false;
        }
        for a in 2..=self.n_max {
            for b in a..=self.n_max / a {
                if *self.value(a * b) != self.value(a) * self.value(b) {
                    return false;
                }
            }
        }
        true
    }

    /// Prefix sums Σ_{k ≤ x} g(k) for 0 ≤ x ≤ n_max.
    pub fn prefix_sums(&self) -> PrefixSums {
        let mut sums = Vec::with_capacity(self.n_max + 1);
        sums.push(Rat::zero());
        let mut acc = Rat::zero();
        for v in &self.values {
            acc += v;
            sums.push(acc.clone());
        }
        PrefixSums {
            n_max: self.n_max,
            sums,
        }
    }

    /// The verification suite tests the theorems' total-multiplicativity
    /// hypothesis by feeding functions that do not satisfy it; forcing the
    /// claim lets the builders run so the resulting mismatch can be reported.
    pub(crate) fn force_total_multiplicativity_claim(mut self) -> Self {
        self.claims_totally_multiplicative = true;
        self
    }
}

/// Running sums of a function table; `sum_to(0) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixSums {
    n_max: usize,
    sums: Vec<Rat>, // sums[x] = Σ_{k ≤ x} g(k), len n_max + 1
}

impl PrefixSums {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Σ_{k ≤ x} g(k) for 0 ≤ x ≤ n_max. Panics out of range.
    pub fn sum_to(&self, x: usize) -> &Rat {
        &self.sums[x]
    }
}

/// Smallest-prime-factor table via the linear sieve; spf[i] = 0 for i < 2.
pub(crate) fn spf_sieve(n_max: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n_max + 1];
    let mut primes: Vec<u32> = Vec::new();
    for i in 2..=n_max {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
        }
        for &p in &primes {
            let ip = i * p as usize;
            if p > spf[i] || ip > n_max {
                break;
            }
            spf[ip] = p;
        }
    }
    spf
}

pub(crate) fn primes_up_to(n_max: usize) -> Vec<u64> {
    let spf = spf_sieve(n_max);
    (2..=n_max)
        .filter(|&i| spf[i] as usize == i)
        .map(|i| i as u64)
        .collect()
}

/// Values of a named kind from its multiplicative (or additive) recurrence
/// against the smallest prime factor. Integer arithmetic everywhere except
/// smith_g, which is carried as an i64 numerator/denominator pair.
fn sieve_named(kind: FunctionKind, n_max: usize, spf: &[u32]) -> Vec<Rat> {
    let int = |v: i64| Rat::from_integer(BigInt::from(v));
    match kind {
        FunctionKind::One => return vec![Rat::one(); n_max],
        FunctionKind::Id => return (1..=n_max as i64).map(int).collect(),
        _ => {}
    }

    // exponent of spf[i] in i, and the spf-power part of i where needed
    let mut cnt = vec![0u32; n_max + 1];
    let mut out: Vec<Rat> = Vec::with_capacity(n_max);
    out.push(Rat::one());

    match kind {
        FunctionKind::Mobius => {
            let mut f = vec![0i64; n_max + 1];
            f[1] = 1;
            for i in 2..=n_max {
                let p = spf[i] as usize;
                let m = i / p;
                f[i] = if m % p == 0 { 0 } else { -f[m] };
                out.push(int(f[i]));
            }
        }
        FunctionKind::Liouville => {
            let mut f = vec![0i64; n_max + 1];
            f[1] = 1;
            for i in 2..=n_max {
                f[i] = -f[i / spf[i] as usize];
                out.push(int(f[i]));
            }
        }
        FunctionKind::BigOmega => {
            let mut f = vec![0i64; n_max + 1];
            for i in 2..=n_max {
                f[i] = f[i / spf[i] as usize] + 1;
                out.push(int(f[i]));
            }
            out[0] = Rat::zero(); // Ω(1) = 0
        }
        FunctionKind::Phi => {
            let mut f = vec![0i64; n_max + 1];
            f[1] = 1;
            for i in 2..=n_max {
                let p = spf[i] as usize;
                let m = i / p;
                f[i] = if m % p == 0 {
                    f[m] * p as i64
                } else {
                    f[m] * (p as i64 - 1)
                };
                out.push(int(f[i]));
            }
        }
        FunctionKind::Tau => {
            let mut f = vec![0i64; n_max + 1];
            f[1] = 1;
            cnt[1] = 0;
            for i in 2..=n_max {
                let p = spf[i] as usize;
                let m = i / p;
                if m % p == 0 {
                    cnt[i] = cnt[m] + 1;
                    // τ(p^a · r) = (a+1)·τ(r); the previous factor was a
                    f[i] = f[m] / (cnt[i] as i64) * (cnt[i] as i64 + 1);
                } else {
                    cnt[i] = 1;
                    f[i] = f[m] * 2;
                }
                out.push(int(f[i]));
            }
        }
        FunctionKind::Sigma => {
            let mut f = vec![0i64; n_max + 1];
            let mut pk = vec![0i64; n_max + 1]; // spf-power part of i
            let mut spk = vec![0i64; n_max + 1]; // σ of that part
            f[1] = 1;
            for i in 2..=n_max {
                let p = spf[i] as usize;
                let m = i / p;
                if m % p == 0 {
                    pk[i] = pk[m] * p as i64;
                    spk[i] = spk[m] + pk[i];
                    f[i] = f[m] / spk[m] * spk[i];
                } else {
                    pk[i] = p as i64;
                    spk[i] = 1 + p as i64;
                    f[i] = f[m] * spk[i];
                }
                out.push(int(f[i]));
            }
        }
        FunctionKind::SmithG => {
            // g(p^a) = (1−p)/p^a, multiplicative; numerators stay within i64
            // because |∏(1−p)| ≤ i and the denominator divides i.
            let mut num = vec![0i64; n_max + 1];
            let mut den = vec![0i64; n_max + 1];
            num[1] = 1;
            den[1] = 1;
            for i in 2..=n_max {
                let p = spf[i] as i64;
                let m = i / p as usize;
                if m % p as usize == 0 {
                    num[i] = num[m];
                } else {
                    num[i] = num[m] * (1 - p);
                }
                den[i] = den[m] * p;
                out.push(Rat::new(BigInt::from(num[i]), BigInt::from(den[i])));
            }
        }
        FunctionKind::One | FunctionKind::Id | FunctionKind::User => unreachable!(),
    }
    out
}

fn sieve_user(n_max: usize, spf: &[u32], primes: &BTreeMap<u64, Rat>) -> Result<Vec<Rat>> {
    for &p in primes.keys() {
        if p < 2 || (p as usize <= n_max && spf[p as usize] as u64 != p) || !is_prime_u64(p) {
            return Err(Error::NonPrimeKey(p));
        }
    }
    for i in 2..=n_max {
        if spf[i] as usize == i && !primes.contains_key(&(i as u64)) {
            return Err(Error::MissingPrimeValue(i as u64));
        }
    }
    let mut out: Vec<Rat> = Vec::with_capacity(n_max);
    out.push(Rat::one());
    // totally multiplicative: g(i) = g(p)·g(i/p) with no coprimality caveat
    for i in 2..=n_max {
        let p = spf[i] as usize;
        let v = &out[i / p - 1] * &primes[&(p as u64)];
        out.push(v);
    }
    Ok(out)
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
