//! Weyl words `ω^p · Π_v X_v^{x_v} Z_v^{z_v}` over Z_d with exact phases.
//!
//! Words are kept in normal form, X left of Z on every qudit. Moving a Z
//! past an X picks up one power of ω (`Z X = ω X Z`), so products and
//! commutators only ever need integer arithmetic mod `d`.

use serde::Serialize;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::zd;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PauliWord {
    d: u32,
    phase: u32,
    x: Vec<u32>,
    z: Vec<u32>,
}

impl PauliWord {
    pub fn identity(d: u32, n: usize) -> Self {
        Self {
            d,
            phase: 0,
            x: vec![0; n],
            z: vec![0; n],
        }
    }

    /// Builds a word from raw exponents, reducing everything mod `d`.
    pub fn from_parts(d: u32, phase: u32, x: Vec<u32>, z: Vec<u32>) -> Result<Self> {
        zd::check_modulus(d)?;
        if x.len() != z.len() {
            return Err(Error::DimensionMismatch(format!(
                "x has {} entries, z has {}",
                x.len(),
                z.len()
            )));
        }
        Ok(Self {
            d,
            phase: phase % d,
            x: x.into_iter().map(|e| e % d).collect(),
            z: z.into_iter().map(|e| e % d).collect(),
        })
    }

    /// `X_v` on `n` qudits.
    pub fn x_on(d: u32, n: usize, v: usize) -> Self {
        let mut w = Self::identity(d, n);
        w.x[v] = 1;
        w
    }

    /// `Z_v` on `n` qudits.
    pub fn z_on(d: u32, n: usize, v: usize) -> Self {
        let mut w = Self::identity(d, n);
        w.z[v] = 1;
        w
    }

    /// `X_V = Π_v X_v`.
    pub fn x_all(d: u32, n: usize) -> Self {
        Self {
            d,
            phase: 0,
            x: vec![1; n],
            z: vec![0; n],
        }
    }

    /// The scalar `ω^k`.
    pub fn scalar(d: u32, n: usize, k: u32) -> Self {
        let mut w = Self::identity(d, n);
        w.phase = k % d;
        w
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn phase(&self) -> u32 {
        self.phase
    }

    pub fn x_exp(&self) -> &[u32] {
        &self.x
    }

    pub fn z_exp(&self) -> &[u32] {
        &self.z
    }

    /// True when the word is a multiple of the identity.
    pub fn is_phase_only(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&e| e == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.phase == 0 && self.is_phase_only()
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.d != other.d || self.n() != other.n() {
            return Err(Error::DimensionMismatch(format!(
                "words over (d = {}, n = {}) and (d = {}, n = {})",
                self.d,
                self.n(),
                other.d,
                other.n()
            )));
        }
        Ok(())
    }

    /// Normal-form product `self · other`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let d = self.d;
        let cross: u64 = self
            .z
            .iter()
            .zip(&other.x)
            .map(|(&z, &x)| zd::mul(z, x, d) as u64)
            .sum();
        Ok(Self {
            d,
            phase: ((self.phase as u64 + other.phase as u64 + cross) % d as u64) as u32,
            x: self
                .x
                .iter()
                .zip(&other.x)
                .map(|(&a, &b)| zd::add(a, b, d))
                .collect(),
            z: self
                .z
                .iter()
                .zip(&other.z)
                .map(|(&a, &b)| zd::add(a, b, d))
                .collect(),
        })
    }

    /// `self^k` by repeated squaring.
    pub fn power(&self, mut k: u64) -> Self {
        let mut acc = Self::identity(self.d, self.n());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.multiply(&base).expect("same shape");
            }
            base = base.multiply(&base).expect("same shape");
            k >>= 1;
        }
        acc
    }

    /// Hermitian adjoint, which for a Weyl word is also its inverse.
    pub fn adjoint(&self) -> Self {
        let d = self.d;
        // (ω^p X^x Z^z)† = ω^{-p} Z^{-z} X^{-x} = ω^{-p + z·x} X^{-x} Z^{-z}
        let cross: u64 = self
            .z
            .iter()
            .zip(&self.x)
            .map(|(&z, &x)| zd::mul(z, x, d) as u64)
            .sum();
        Self {
            d,
            phase: ((zd::neg(self.phase, d) as u64 + cross) % d as u64) as u32,
            x: self.x.iter().map(|&e| zd::neg(e, d)).collect(),
            z: self.z.iter().map(|&e| zd::neg(e, d)).collect(),
        }
    }

    /// The `c` with `self · other = ω^c · other · self`.
    pub fn commutation_phase(&self, other: &Self) -> Result<u32> {
        self.check_same_shape(other)?;
        let d = self.d as i64;
        let c: i64 = (0..self.n())
            .map(|v| self.z[v] as i64 * other.x[v] as i64 - self.x[v] as i64 * other.z[v] as i64)
            .sum();
        Ok(zd::reduce(c % d, self.d))
    }

    pub fn commutes_with(&self, other: &Self) -> Result<bool> {
        Ok(self.commutation_phase(other)? == 0)
    }

    /// One token per qudit, e.g. `["X", "Z^3", "Z", "Z^0"]`.
    pub fn render_tokens(&self, style: RenderStyle) -> Vec<String> {
        (0..self.n())
            .map(|v| {
                let mut token = String::new();
                match self.x[v] {
                    0 => {}
                    x if style.dagger_x && x == self.d - 1 => token.push_str("X^†"),
                    1 => token.push('X'),
                    x => token.push_str(&format!("X^{x}")),
                }
                match self.z[v] {
                    0 if token.is_empty() && style.explicit_zero_z => token.push_str("Z^0"),
                    0 => {}
                    1 => token.push('Z'),
                    z => token.push_str(&format!("Z^{z}")),
                }
                if token.is_empty() {
                    token.push('I');
                }
                token
            })
            .collect()
    }

    /// Parses the whitespace-separated token form produced by
    /// [`render_tokens`](Self::render_tokens), with an optional leading
    /// `ω^k` (or `w^k`) phase token.
    pub fn parse(text: &str, d: u32) -> Result<Self> {
        zd::check_modulus(d)?;
        let mut tokens: Vec<&str> = text.split_whitespace().collect();
        let mut phase = 0;
        if let Some(first) = tokens.first() {
            if let Some(rest) = first.strip_prefix("ω").or_else(|| first.strip_prefix('w')) {
                phase = parse_exponent(rest, d)?;
                tokens.remove(0);
            }
        }
        if tokens.is_empty() {
            return Err(Error::Parse("empty word".into()));
        }
        let n = tokens.len();
        let mut word = Self::scalar(d, n, phase);
        for (v, token) in tokens.iter().enumerate() {
            if *token == "I" {
                continue;
            }
            let mut rest = *token;
            while !rest.is_empty() {
                let mut chars = rest.chars();
                let letter = chars.next().unwrap();
                rest = chars.as_str();
                let exp_len = rest
                    .strip_prefix('^')
                    .map(|r| 1 + r.find(['X', 'Z']).unwrap_or(r.len()))
                    .unwrap_or(0);
                let exp = parse_exponent(&rest[..exp_len], d)?;
                rest = &rest[exp_len..];
                let factor = match letter {
                    'X' => Self::x_on(d, n, v),
                    'Z' => Self::z_on(d, n, v),
                    other => {
                        return Err(Error::Parse(format!(
                            "unexpected '{other}' in token '{token}'"
                        )))
                    }
                };
                word = word.multiply(&factor.power(exp as u64))?;
            }
        }
        Ok(word)
    }
}

fn parse_exponent(text: &str, d: u32) -> Result<u32> {
    match text {
        "" => Ok(1),
        "^†" => Ok(d - 1),
        _ => {
            let digits = text
                .strip_prefix('^')
                .ok_or_else(|| Error::Parse(format!("bad exponent '{text}'")))?;
            let e: u64 = digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent '{text}'")))?;
            Ok((e % d as u64) as u32)
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RenderStyle {
    /// Write `Z^0` instead of `I` on qudits the word does not touch.
    pub explicit_zero_z: bool,
    /// Write `X^{d-1}` as `X^†`.
    pub dagger_x: bool,
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.phase != 0 {
            write!(f, "ω^{} ", self.phase)?;
        }
        write!(
            f,
            "{}",
            self.render_tokens(RenderStyle::default()).join(" ")
        )
    }
}

/// `g_v = X_v Π_u Z_u^{Γ_uv}`.
pub fn vertex_stabilizer(g: &WeightedGraph, v: usize) -> Result<PauliWord> {
    g.check_vertex(v)?;
    let mut w = PauliWord::x_on(g.d(), g.n(), v);
    for u in 0..g.n() {
        w.z[u] = g.weight(u, v);
    }
    Ok(w)
}

/// Product of vertex stabilizers over `vertices`, taken in ascending order.
pub fn stabilizer_product(g: &WeightedGraph, vertices: &[usize]) -> Result<PauliWord> {
    let mut sorted = vertices.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|p| p[0] == p[1]) {
        return Err(Error::InvalidSubset("repeated vertex".into()));
    }
    let mut acc = PauliWord::identity(g.d(), g.n());
    for v in sorted {
        acc = acc.multiply(&vertex_stabilizer(g, v)?)?;
    }
    Ok(acc)
}
