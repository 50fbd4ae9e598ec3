//! Finite groups given by dense multiplication tables over `0..order`.

use std::fmt;
use std::sync::OnceLock;

use crate::error::GroupError;
use crate::Elem;

/// Largest order accepted by the table constructors.
pub const MAX_ORDER: usize = 4096;

/// A finite group on the ids `0..order`.
///
/// The multiplication table is stored row-major; `mul(a, b)` is the product `ab`.
/// Every constructor either validates the group axioms or builds the table from data
/// that already satisfies them (products, semidirect products, quotients).
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    identity: Elem,
    generators: OnceLock<Vec<Elem>>,
}

impl Clone for FiniteGroup {
    fn clone(&self) -> Self {
        FiniteGroup {
            order: self.order,
            table: self.table.clone(),
            inverses: self.inverses.clone(),
            identity: self.identity,
            generators: OnceLock::new(),
        }
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.identity == other.identity && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("identity", &self.identity)
            .finish_non_exhaustive()
    }
}

impl FiniteGroup {
    /// Validates a square table and builds the group.
    ///
    /// Associativity is decided with Light's test over a magma generating set, which is
    /// equivalent to checking all triples but costs `order² · |gens|`.
    pub fn from_table(rows: &[Vec<usize>], identity: Elem) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::NotSquare { row: 0, len: 0, expected: 1 });
        }
        if n > MAX_ORDER {
            return Err(GroupError::TooLarge { order: n, limit: MAX_ORDER });
        }
        let mut table = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotSquare { row: r, len: row.len(), expected: n });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::OutOfRange { row: r, col: c, value: v });
                }
                table.push(v as u32);
            }
        }
        if identity >= n {
            return Err(GroupError::OutOfRange { row: identity, col: identity, value: identity });
        }
        let at = |a: usize, b: usize| table[a * n + b] as usize;
        for x in 0..n {
            if at(identity, x) != x || at(x, identity) != x {
                return Err(GroupError::NoIdentity { identity, witness: x });
            }
        }
        let mut inverses = vec![u32::MAX; n];
        for a in 0..n {
            let b = (0..n).find(|&b| at(a, b) == identity && at(b, a) == identity);
            match b {
                Some(b) => inverses[a] = b as u32,
                None => return Err(GroupError::NoInverse { element: a }),
            }
        }
        check_associative(n, &table)?;
        Ok(FiniteGroup { order: n, table, inverses, identity, generators: OnceLock::new() })
    }

    /// Builds a group from a flat table known to satisfy the axioms.
    pub(crate) fn from_flat_table_unchecked(order: usize, table: Vec<u32>, identity: Elem) -> Self {
        debug_assert_eq!(table.len(), order * order);
        let mut inverses = vec![0u32; order];
        for a in 0..order {
            let row = &table[a * order..(a + 1) * order];
            let b = row.iter().position(|&x| x as usize == identity).expect("latin row");
            inverses[a] = b as u32;
        }
        FiniteGroup { order, table, inverses, identity, generators: OnceLock::new() }
    }

    pub fn trivial() -> Self {
        FiniteGroup::cyclic(1)
    }

    /// `ℤ/n` with element `k` the residue `k`.
    pub fn cyclic(n: usize) -> Self {
        assert!((1..=MAX_ORDER).contains(&n), "cyclic order out of range");
        let table = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
        FiniteGroup::from_flat_table_unchecked(n, table, 0)
    }

    /// `a × b` with `(x, y)` stored at id `x * |b| + y`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<Self, GroupError> {
        let (na, nb) = (a.order, b.order);
        let n = na * nb;
        if n > MAX_ORDER {
            return Err(GroupError::TooLarge { order: n, limit: MAX_ORDER });
        }
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let (x1, x2) = (x / nb, x % nb);
                let (y1, y2) = (y / nb, y % nb);
                table.push((a.mul(x1, y1) * nb + b.mul(x2, y2)) as u32);
            }
        }
        Ok(FiniteGroup::from_flat_table_unchecked(n, table, a.identity * nb + b.identity))
    }

    /// The multiplicative group `(ℤ/m)ˣ`; element `i` is the `i`-th unit in increasing order.
    pub fn units_mod(m: usize) -> Self {
        let units = units_of(m);
        let pos = |u: usize| units.iter().position(|&x| x == u).unwrap();
        let n = units.len();
        let mut table = Vec::with_capacity(n * n);
        for &x in &units {
            for &y in &units {
                table.push(pos(x * y % m) as u32);
            }
        }
        FiniteGroup::from_flat_table_unchecked(n, table, pos(1 % m.max(2)))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> Elem {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a] as usize
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    /// `a^k` for any integer `k`.
    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = self.identity;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    /// `g a g⁻¹`.
    #[inline]
    pub fn conjugate(&self, g: Elem, a: Elem) -> Elem {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter().all(|&s| gens.iter().all(|&t| self.mul(s, t) == self.mul(t, s)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.elements().any(|a| self.element_order(a) == self.order)
    }

    pub fn center(&self) -> Vec<Elem> {
        let gens = self.generators();
        self.elements().filter(|&z| gens.iter().all(|&s| self.mul(z, s) == self.mul(s, z))).collect()
    }

    /// A deterministic generating set: scan ids upward, keeping each id not yet generated.
    pub fn generators(&self) -> &[Elem] {
        self.generators.get_or_init(|| {
            let mut gens = Vec::new();
            let mut member = vec![false; self.order];
            member[self.identity] = true;
            let mut members = vec![self.identity];
            for x in self.elements() {
                if member[x] {
                    continue;
                }
                gens.push(x);
                // re-close: right-multiply every member by every generator
                let mut i = 0;
                while i < members.len() {
                    let m = members[i];
                    for &s in &gens {
                        let y = self.mul(m, s);
                        if !member[y] {
                            member[y] = true;
                            members.push(y);
                        }
                    }
                    i += 1;
                }
                if members.len() == self.order {
                    break;
                }
            }
            gens
        })
    }

    /// Elements of the subgroup generated by `seed`, via right multiplication by the seed.
    pub fn generated_by(&self, seed: &[Elem]) -> Vec<Elem> {
        let mut member = vec![false; self.order];
        member[self.identity] = true;
        let mut members = vec![self.identity];
        let mut i = 0;
        while i < members.len() {
            let m = members[i];
            for &s in seed {
                let y = self.mul(m, s);
                if !member[y] {
                    member[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        members
    }

    /// The table as nested rows, the inverse of [`FiniteGroup::from_table`].
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }

    /// Exhaustive `order³` associativity check, for tests and small tables.
    pub fn is_associative_exhaustive(&self) -> bool {
        self.elements().all(|a| {
            self.elements().all(|b| {
                let ab = self.mul(a, b);
                self.elements().all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
            })
        })
    }
}

fn units_of(m: usize) -> Vec<usize> {
    (1..m.max(2)).filter(|&u| gcd(u, m) == 1).collect()
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Light's associativity test on a table with a two-sided identity.
fn check_associative(n: usize, table: &[u32]) -> Result<(), GroupError> {
    let at = |a: usize, b: usize| table[a * n + b] as usize;
    // left-normed products of the chosen elements must cover the table
    let mut gens: Vec<usize> = Vec::new();
    let mut reached = vec![false; n];
    let mut reached_list: Vec<usize> = Vec::new();
    for x in 0..n {
        if reached[x] {
            continue;
        }
        gens.push(x);
        reached[x] = true;
        reached_list.push(x);
        let mut i = 0;
        while i < reached_list.len() {
            let m = reached_list[i];
            for &s in &gens {
                let y = at(m, s);
                if !reached[y] {
                    reached[y] = true;
                    reached_list.push(y);
                }
            }
            i += 1;
        }
    }
    for &s in &gens {
        for a in 0..n {
            let as_ = at(a, s);
            for c in 0..n {
                if at(as_, c) != at(a, at(s, c)) {
                    return Err(GroupError::NotAssociative { a, b: s, c });
                }
            }
        }
    }
    Ok(())
}
