//! Cyclotomic numbers of order 4 modulo a prime `p = 1 (mod 4)`.

use num_integer::Roots;
use serde::Serialize;

use super::arith::{is_prime, pow_mod, primitive_root};
use crate::error::{Error, Result};

/// Sign of `y` for which `16 (0,1) = p + 1 + 2x - 8y` holds, given the
/// primitive root in use. Only meaningful when `(p-1)/4` is odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum YOrientation {
    Positive,
    Negative,
    /// `y = 0` cannot occur for prime `p > 2`, so this flags a formula mismatch
    /// or an even `(p-1)/4`.
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuarticCyclotomy {
    pub p: u64,
    /// The least primitive root.
    pub root: u64,
    /// `C_i = { root^(4s+i) }`, each sorted.
    pub classes: [Vec<u64>; 4],
    /// `table[i][j] = #{ z in C_i : z + 1 in C_j }`.
    pub table: [[u64; 4]; 4],
    /// `p = x^2 + 4y^2` with `x = 1 (mod 4)` and `y >= 0`.
    pub x: i64,
    pub y: i64,
    pub orientation: YOrientation,
    /// `2f - 1 - 8 (1,0)` with `f = (p-1)/4`, when `f` is odd.
    pub x_from_table: Option<i64>,
}

impl QuarticCyclotomy {
    pub fn f(&self) -> u64 {
        (self.p - 1) / 4
    }

    pub fn number(&self, i: usize, j: usize) -> u64 {
        self.table[i % 4][j % 4]
    }

    /// Index `i` with `z` in `C_i`; `None` for `z = 0`.
    pub fn class_index(&self, z: u64) -> Option<usize> {
        self.classes.iter().position(|c| c.binary_search(&(z % self.p)).is_ok())
    }

    /// Whether `x = 2f - 1 - 8 (1,0)` holds; `None` when `f` is even.
    pub fn x_identity_holds(&self) -> Option<bool> {
        self.x_from_table.map(|x| x == self.x)
    }

    /// `sum_j (i,j) = f - [ -1 in C_i ]` for every `i`.
    pub fn row_sums_consistent(&self) -> bool {
        let minus_one = self.class_index(self.p - 1);
        (0..4).all(|i| self.table[i].iter().sum::<u64>() + (minus_one == Some(i)) as u64 == self.f())
    }
}

pub fn quartic_cyclotomy(p: u64) -> Result<QuarticCyclotomy> {
    if !is_prime(p) || p % 4 != 1 {
        return Err(Error::InvalidArgument(format!("{p} is not a prime congruent to 1 mod 4")));
    }
    let g = primitive_root(p);
    let f = (p - 1) / 4;
    let mut index = vec![usize::MAX; p as usize];
    let mut classes: [Vec<u64>; 4] = Default::default();
    for e in 0..p - 1 {
        let z = pow_mod(g, e, p);
        index[z as usize] = (e % 4) as usize;
        classes[(e % 4) as usize].push(z);
    }
    classes.iter_mut().for_each(|c| c.sort_unstable());
    let mut table = [[0u64; 4]; 4];
    for z in 1..p - 1 {
        table[index[z as usize]][index[z as usize + 1]] += 1;
    }
    let (x, y) = two_squares(p);
    let orientation = if f % 2 == 0 {
        YOrientation::Neither
    } else {
        let lhs = 16 * table[0][1] as i64;
        let base = p as i64 + 1 + 2 * x;
        if lhs == base - 8 * y {
            YOrientation::Positive
        } else if lhs == base + 8 * y {
            YOrientation::Negative
        } else {
            YOrientation::Neither
        }
    };
    let x_from_table = (f % 2 == 1).then(|| 2 * f as i64 - 1 - 8 * table[1][0] as i64);
    Ok(QuarticCyclotomy {
        p,
        root: g,
        classes,
        table,
        x,
        y,
        orientation,
        x_from_table,
    })
}

/// The representation `p = x^2 + 4y^2` with `x = 1 (mod 4)`, `y >= 0`.
fn two_squares(p: u64) -> (i64, i64) {
    let p = p as i64;
    let mut x = -p.sqrt();
    while x * x <= p {
        let rest = p - x * x;
        if x.rem_euclid(4) == 1 && rest % 4 == 0 {
            let y2 = rest / 4;
            let y = y2.sqrt();
            if y * y == y2 {
                return (x, y);
            }
        }
        x += 1;
    }
    unreachable!("every prime 1 mod 4 is x^2 + 4y^2")
}
