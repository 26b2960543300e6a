//! Log/Zech tables for the small fields the oracle enumerates.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::coeff::{ff_extension, FieldDesc};
use crate::error::{Error, Result};

/// Log of zero.
pub(crate) const ZERO: u32 = u32::MAX;

/// Largest field the oracle will tabulate.
const MAX_TABLE: u64 = 1 << 24;

/// `F_{p^k}` with elements written as discrete logs to a primitive element.
pub(crate) struct TabField {
    pub desc: Arc<FieldDesc>,
    p: u64,
    order: u64, // q - 1
    /// log -> encoding index
    exp: Vec<u32>,
    /// encoding index -> log
    log: Vec<u32>,
    /// i -> log(1 + g^i)
    zech: Vec<u32>,
    /// residue c -> log(c)
    consts: Vec<u32>,
}

impl TabField {
    fn build(desc: Arc<FieldDesc>) -> Result<Self> {
        let q = desc.size();
        if q > MAX_TABLE {
            return Err(Error::resource(
                "field-size",
                format!(
                    "F_{}^{} is too large to tabulate",
                    desc.characteristic(),
                    desc.degree()
                ),
            ));
        }
        let p = desc.characteristic();
        let order = q - 1;
        let prime_factors = factor(order);
        let g = (1..q)
            .map(|i| desc.element(i))
            .find(|e| {
                prime_factors
                    .iter()
                    .all(|&r| e.pow((order / r) as u128).rep() != [1])
            })
            .expect("the multiplicative group is cyclic");

        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![ZERO; q as usize];
        let mut cur = desc.one();
        for i in 0..order {
            let idx = cur.index();
            exp.push(idx as u32);
            log[idx as usize] = i as u32;
            cur = cur.mul(&g);
        }
        let zech = exp
            .iter()
            .map(|&idx| {
                let idx = idx as u64;
                let c = idx % p;
                log[(idx - c + (c + 1) % p) as usize]
            })
            .collect();
        let consts = (0..p).map(|c| log[c as usize]).collect();
        Ok(TabField {
            desc,
            p,
            order,
            exp,
            log,
            zech,
            consts,
        })
    }

    pub fn size(&self) -> u64 {
        self.order + 1
    }

    pub fn log_of_index(&self, idx: u64) -> u32 {
        self.log[idx as usize]
    }

    pub fn index_of(&self, l: u32) -> u64 {
        if l == ZERO {
            0
        } else {
            self.exp[l as usize] as u64
        }
    }

    /// Log of the image of a residue mod p.
    pub fn constant(&self, c: u64) -> u32 {
        self.consts[(c % self.p) as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == ZERO || b == ZERO {
            ZERO
        } else {
            ((a as u64 + b as u64) % self.order) as u32
        }
    }

    /// `a * b^e` for `b` nonzero.
    pub fn mul_pow(&self, a: u32, b: u32, e: u32) -> u32 {
        ((a as u64 + b as u64 * e as u64) % self.order) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if a == ZERO {
            return b;
        }
        if b == ZERO {
            return a;
        }
        let diff = (b as u64 + self.order - a as u64) % self.order;
        match self.zech[diff as usize] {
            ZERO => ZERO,
            z => ((a as u64 + z as u64) % self.order) as u32,
        }
    }

    /// Value of an `F_p` polynomial (lowest coefficient first) at `x`.
    fn eval_fp(&self, coeffs: &[u64], x: u32) -> u32 {
        coeffs
            .iter()
            .rev()
            .fold(ZERO, |acc, &c| self.add(self.mul(acc, x), self.constant(c)))
    }
}

fn factor(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The tabulated fields `F_{p^k}` of one characteristic, with embeddings.
pub(crate) struct Tower {
    p: u64,
    fields: BTreeMap<u32, TabField>,
    // (a, b) -> log in F_{p^b} of the image of the generator of F_{p^a}
    gens: BTreeMap<(u32, u32), u32>,
}

impl Tower {
    pub fn new(p: u64) -> Self {
        Tower {
            p,
            fields: BTreeMap::new(),
            gens: BTreeMap::new(),
        }
    }

    pub fn ensure(&mut self, k: u32) -> Result<()> {
        if !self.fields.contains_key(&k) {
            let t = TabField::build(ff_extension(self.p, k)?)?;
            self.fields.insert(k, t);
        }
        Ok(())
    }

    /// Prepares the embedding `F_{p^a} -> F_{p^b}` sending `w` to the first
    /// root of the modulus of `F_{p^a}` in encoding order.
    pub fn ensure_embedding(&mut self, a: u32, b: u32) -> Result<()> {
        self.ensure(a)?;
        self.ensure(b)?;
        if a == b || self.gens.contains_key(&(a, b)) {
            return Ok(());
        }
        debug_assert_eq!(b % a, 0);
        let src = &self.fields[&a];
        let dst = &self.fields[&b];
        let root = (0..dst.size())
            .map(|i| dst.log_of_index(i))
            .find(|&x| dst.eval_fp(src.desc.modulus(), x) == ZERO)
            .expect("the source modulus splits in the target");
        // Image of the primitive element g = sum c_i w^i.
        let g_index = src.index_of((1 % src.order) as u32);
        let mut digits = Vec::new();
        let mut n = g_index;
        for _ in 0..a {
            digits.push(n % self.p);
            n /= self.p;
        }
        let image = dst.eval_fp(&digits, root);
        self.gens.insert((a, b), image);
        Ok(())
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn field(&self, k: u32) -> &TabField {
        &self.fields[&k]
    }

    /// Transports a value from `F_{p^a}` into `F_{p^b}`.
    pub fn embed(&self, a: u32, b: u32, x: u32) -> u32 {
        if a == b || x == ZERO {
            return x;
        }
        let g = self.gens[&(a, b)];
        let dst = &self.fields[&b];
        dst.mul_pow(0, g, x)
    }
}
