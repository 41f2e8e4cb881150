use std::fmt;

/// Exponent triple `(e_x, e_y, e_z)`.
///
/// The derived order is lexicographic with `x > y > z`. Inside a single
/// homogeneous polynomial every monomial has the same total degree, so
/// this coincides with graded-lex order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mono3(pub [u32; 3]);

impl Mono3 {
    pub fn new(ex: u32, ey: u32, ez: u32) -> Self {
        Mono3([ex, ey, ez])
    }

    pub fn total(self) -> u32 {
        self.0[0] + self.0[1] + self.0[2]
    }

    pub fn mul(self, o: Mono3) -> Mono3 {
        Mono3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }

    pub fn divides(self, o: Mono3) -> bool {
        (0..3).all(|i| self.0[i] <= o.0[i])
    }

    /// `o / self`, assuming divisibility.
    pub fn quotient_of(self, o: Mono3) -> Mono3 {
        Mono3([o.0[0] - self.0[0], o.0[1] - self.0[1], o.0[2] - self.0[2]])
    }

    /// Position in the dense table of degree-`d` monomials, ordered
    /// so that descending `Mono3` order maps to descending index.
    #[inline]
    pub fn dense_index(self, d: u32) -> usize {
        let (ex, ey) = (self.0[0] as usize, self.0[1] as usize);
        let d = d as usize;
        ex * (d + 1) - ex * ex.saturating_sub(1) / 2 + ey
    }

    /// Inverse of [`Mono3::dense_index`], as an iterator over all
    /// monomials of degree `d` in descending order.
    pub fn all_of_degree(d: u32) -> impl DoubleEndedIterator<Item = Mono3> {
        (0..=d).rev().flat_map(move |ex| (0..=d - ex).rev().map(move |ey| Mono3([ex, ey, d - ex - ey])))
    }

    pub fn count_of_degree(d: u32) -> usize {
        let d = d as usize;
        (d + 1) * (d + 2) / 2
    }
}

impl fmt::Display for Mono3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, e) in ["x", "y", "z"].iter().zip(self.0) {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}
