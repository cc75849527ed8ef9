use alloc::collections::VecDeque;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

/// Element of the Weyl group of `GSp(4)`: a signed permutation matrix
/// acting on the `(a, b)` part of a weight. The `c` part is fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElt {
    m: [[i8; 2]; 2],
}

impl WeylElt {
    pub const ID: WeylElt = WeylElt { m: [[1, 0], [0, 1]] };
    pub const S1: WeylElt = WeylElt { m: [[1, 0], [0, -1]] };
    pub const S2: WeylElt = WeylElt { m: [[0, 1], [1, 0]] };
    pub const W1: WeylElt = Self::S1;
    /// `s1 s2`
    pub const W2: WeylElt = WeylElt { m: [[0, 1], [-1, 0]] };
    /// `s1 s2 s1`
    pub const W3: WeylElt = WeylElt { m: [[0, -1], [-1, 0]] };
    pub const WG_MAX: WeylElt = WeylElt { m: [[-1, 0], [0, -1]] };
    pub const WM_MAX: WeylElt = Self::S2;

    /// The Kostant representatives `id, w1, w2, w3`, indexed by length.
    pub const KOSTANT: [WeylElt; 4] = [Self::ID, Self::W1, Self::W2, Self::W3];

    pub fn matrix(self) -> [[i8; 2]; 2] {
        self.m
    }

    /// All eight elements, in breadth-first order from the identity.
    pub fn all() -> Vec<WeylElt> {
        Self::bfs().into_iter().map(|(w, _)| w).collect()
    }

    fn bfs() -> Vec<(WeylElt, usize)> {
        let mut seen: Vec<(WeylElt, usize)> = alloc::vec![(Self::ID, 0)];
        let mut queue = VecDeque::from([(Self::ID, 0)]);
        while let Some((w, l)) = queue.pop_front() {
            for s in [Self::S1, Self::S2] {
                let ws = w * s;
                if !seen.iter().any(|(x, _)| *x == ws) {
                    seen.push((ws, l + 1));
                    queue.push_back((ws, l + 1));
                }
            }
        }
        seen
    }

    /// Length with respect to `{s1, s2}`.
    pub fn length(self) -> usize {
        Self::bfs()
            .into_iter()
            .find(|(w, _)| *w == self)
            .map(|(_, l)| l)
            .expect("closed under generators")
    }

    pub fn inverse(self) -> WeylElt {
        let m = self.m;
        WeylElt { m: [[m[0][0], m[1][0]], [m[0][1], m[1][1]]] }
    }

    pub fn apply(self, v: [i64; 2]) -> [i64; 2] {
        let m = self.m;
        [
            m[0][0] as i64 * v[0] + m[0][1] as i64 * v[1],
            m[1][0] as i64 * v[0] + m[1][1] as i64 * v[1],
        ]
    }

    pub fn is_kostant(self) -> bool {
        Self::KOSTANT.contains(&self)
    }

    /// The permutation of the torus coordinates `(st1, st2, s/t2, s/t1)`,
    /// 1-indexed, induced by conjugation by `w`.
    pub fn to_s4(self) -> [usize; 4] {
        // coordinate k <-> signed basis vector of the cocharacter lattice
        let basis: [(usize, i64); 4] = [(0, 1), (1, 1), (1, -1), (0, -1)];
        let inv = self.inverse();
        let mut out = [0; 4];
        for (k, &(i, s)) in basis.iter().enumerate() {
            let mut v = [0i64; 2];
            v[i] = s;
            let image = inv.apply(v);
            let j = if image[0] != 0 { 0 } else { 1 };
            out[k] = 1 + basis.iter().position(|&b| b == (j, image[j])).expect("signed unit");
        }
        out
    }

    /// Name among the standard elements, if it has one.
    pub fn name(self) -> &'static str {
        match self {
            x if x == Self::ID => "id",
            x if x == Self::W1 => "w1",
            x if x == Self::W2 => "w2",
            x if x == Self::W3 => "w3",
            x if x == Self::S2 => "s2",
            x if x == Self::WG_MAX => "wGmax",
            x if x == Self::S2 * Self::S1 => "s2s1",
            _ => "s2s1s2",
        }
    }

    pub fn from_name(s: &str) -> Option<WeylElt> {
        Self::all().into_iter().find(|w| w.name() == s).or(match s {
            "s1" => Some(Self::S1),
            "wMmax" => Some(Self::WM_MAX),
            "s1s2" => Some(Self::W2),
            "s1s2s1" => Some(Self::W3),
            _ => None,
        })
    }
}

/// Composition of maps: `(v * w)(x) = v(w(x))`.
impl Mul for WeylElt {
    type Output = WeylElt;
    fn mul(self, rhs: WeylElt) -> WeylElt {
        let (a, b) = (self.m, rhs.m);
        let mut m = [[0i8; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        WeylElt { m }
    }
}

impl fmt::Display for WeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_structure() {
        let all = WeylElt::all();
        assert_eq!(all.len(), 8);
        for &x in &all {
            assert!(all.contains(&x.inverse()));
            assert_eq!(x * x.inverse(), WeylElt::ID);
            for &y in &all {
                assert!(all.contains(&(x * y)));
                for &z in &all {
                    assert_eq!((x * y) * z, x * (y * z));
                }
            }
        }
        let s1s2 = WeylElt::S1 * WeylElt::S2;
        assert_eq!(WeylElt::S1 * WeylElt::S1, WeylElt::ID);
        assert_eq!(WeylElt::S2 * WeylElt::S2, WeylElt::ID);
        assert_eq!(s1s2 * s1s2 * s1s2 * s1s2, WeylElt::ID);
        assert_ne!(s1s2 * s1s2, WeylElt::ID);
        assert_eq!(WeylElt::W2, s1s2);
        assert_eq!(WeylElt::W3, s1s2 * WeylElt::S1);
        assert_eq!(s1s2 * s1s2, WeylElt::WG_MAX);
    }

    #[test]
    fn kostant_lengths() {
        for (i, w) in WeylElt::KOSTANT.iter().enumerate() {
            assert_eq!(w.length(), i);
        }
        assert_eq!(WeylElt::WG_MAX.length(), 4);
        assert_eq!(WeylElt::WM_MAX.length(), 1);
    }

    #[test]
    fn kostant_involution() {
        for (i, &w) in WeylElt::KOSTANT.iter().enumerate() {
            assert_eq!(WeylElt::WM_MAX * w * WeylElt::WG_MAX, WeylElt::KOSTANT[3 - i]);
        }
    }

    #[test]
    fn s4_realization() {
        let mut images = alloc::vec::Vec::new();
        for w in WeylElt::all() {
            let p = w.to_s4();
            // conjugation by w preserves the pairing k <-> 5 - k
            for k in 1..=4 {
                assert_eq!(p[4 - k], 5 - p[k - 1]);
            }
            assert_eq!(w.is_kostant(), p[0] < p[1], "{w}");
            images.push(p);
        }
        images.sort();
        images.dedup();
        assert_eq!(images.len(), 8);
    }

    #[test]
    fn names_round_trip() {
        for w in WeylElt::all() {
            assert_eq!(WeylElt::from_name(w.name()), Some(w));
        }
        assert_eq!(WeylElt::from_name("wMmax"), Some(WeylElt::S2));
    }
}
