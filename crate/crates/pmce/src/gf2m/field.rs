//! Base field GF(2^m) with eager exp/log/sqrt tables.

use super::FieldError;

/// A field element; only the low m bits are used.
pub type Gfe = u16;

/// One conventional low-weight primitive polynomial per extension degree.
const REDUCTION_POLYS: &[(u32, u32)] = &[
    (3, 0b1011),              // x^3 + x + 1
    (4, 0b1_0011),            // x^4 + x + 1
    (5, 0b10_0101),           // x^5 + x^2 + 1
    (6, 0b100_0011),          // x^6 + x + 1
    (7, 0b1000_1001),         // x^7 + x^3 + 1
    (8, 0b1_0001_1101),       // x^8 + x^4 + x^3 + x^2 + 1
    (9, 0b10_0001_0001),      // x^9 + x^4 + 1
    (10, 0b100_0000_1001),    // x^10 + x^3 + 1
    (11, 0b1000_0000_0101),   // x^11 + x^2 + 1
    (12, 0b1_0000_0101_0011), // x^12 + x^6 + x^4 + x + 1
    (13, 0b10_0000_0001_1011), // x^13 + x^4 + x^3 + x + 1
];

fn bin_poly_degree(p: u32) -> u32 {
    31 - p.leading_zeros()
}

fn bin_poly_rem(mut a: u32, b: u32) -> u32 {
    let db = bin_poly_degree(b);
    while a != 0 && bin_poly_degree(a) >= db {
        a ^= b << (bin_poly_degree(a) - db);
    }
    a
}

/// Irreducibility over GF(2) by trial division against every binary
/// polynomial of degree up to m/2.
fn bin_poly_irreducible(p: u32) -> bool {
    let d = bin_poly_degree(p);
    for div in 2u32..=(1 << (d / 2 + 1)) {
        if bin_poly_degree(div) > d / 2 {
            continue;
        }
        if bin_poly_rem(p, div) == 0 {
            return false;
        }
    }
    true
}

/// Parameters of GF(2^m): extension degree, reduction polynomial, and the
/// multiplication tables. Immutable after construction.
#[derive(Clone)]
pub struct FieldParams {
    m: u32,
    reduction: u32,
    exp: Vec<Gfe>,
    log: Vec<u16>,
    sqrt: Vec<Gfe>,
}

impl FieldParams {
    /// Builds GF(2^m) for 3 ≤ m ≤ 13, verifying that the built-in reduction
    /// polynomial is irreducible and that x generates the whole
    /// multiplicative group.
    pub fn new(m: u32) -> Result<FieldParams, FieldError> {
        let &(_, reduction) = REDUCTION_POLYS
            .iter()
            .find(|&&(deg, _)| deg == m)
            .ok_or(FieldError::UnsupportedDegree(m))?;
        if !bin_poly_irreducible(reduction) {
            return Err(FieldError::BadReduction(format!("{reduction:#b} is reducible")));
        }
        let size = 1usize << m;
        let group = size - 1;
        let mut exp = vec![0 as Gfe; 2 * group];
        let mut log = vec![u16::MAX; size];
        let mut e: u32 = 1;
        for i in 0..group {
            exp[i] = e as Gfe;
            if log[e as usize] != u16::MAX {
                return Err(FieldError::BadReduction(format!(
                    "{reduction:#b} is not primitive"
                )));
            }
            log[e as usize] = i as u16;
            e <<= 1;
            if e >> m != 0 {
                e ^= reduction;
            }
        }
        if e != 1 {
            return Err(FieldError::BadReduction(format!(
                "{reduction:#b} does not generate a cycle of length {group}"
            )));
        }
        for i in 0..group {
            exp[group + i] = exp[i];
        }
        // Squaring is a bijection in characteristic 2, so the square-root
        // table is its inverse map.
        let mut sqrt = vec![0 as Gfe; size];
        for a in 0..size as u32 {
            let sq = if a == 0 {
                0
            } else {
                exp[(2 * log[a as usize] as usize) % group] as u32
            };
            sqrt[sq as usize] = a as Gfe;
        }
        Ok(FieldParams {
            m,
            reduction,
            exp,
            log,
            sqrt,
        })
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn reduction_poly(&self) -> u32 {
        self.reduction
    }

    /// Number of field elements, 2^m.
    pub fn size(&self) -> usize {
        1 << self.m
    }

    /// Addition is xor of representations.
    #[inline]
    pub fn add(a: Gfe, b: Gfe) -> Gfe {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: Gfe, b: Gfe) -> Gfe {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[self.log[a as usize] as usize + self.log[b as usize] as usize]
        }
    }

    pub fn inv(&self, a: Gfe) -> Result<Gfe, FieldError> {
        if a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let group = self.size() - 1;
        Ok(self.exp[(group - self.log[a as usize] as usize) % group])
    }

    /// The unique square root of `a` (the Frobenius map is bijective).
    #[inline]
    pub fn sqrt(&self, a: Gfe) -> Gfe {
        self.sqrt[a as usize]
    }

    pub fn pow(&self, a: Gfe, e: u64) -> Gfe {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let group = (self.size() - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % group)) % group) as usize]
    }

    /// All field elements in the fixed enumeration order 0, 1, α, α², …
    pub fn elements(&self) -> impl Iterator<Item = Gfe> + '_ {
        std::iter::once(0).chain((0..self.size() - 1).map(|i| self.exp[i]))
    }
}

impl std::fmt::Debug for FieldParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FieldParams(GF(2^{}), reduction {:#b})", self.m, self.reduction)
    }
}
