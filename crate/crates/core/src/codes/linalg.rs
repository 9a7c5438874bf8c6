use crate::bits::BitSet;

/// Incremental row-echelon form over F₂, keyed by lowest set bit.
#[derive(Debug, Clone)]
pub struct Echelon {
    rows: Vec<BitSet>,
    pivot_of: Vec<Option<u32>>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon {
            rows: Vec::new(),
            pivot_of: vec![None; width],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &BitSet) -> BitSet {
        let mut v = v.clone();
        while let Some(i) = v.first_one() {
            match self.pivot_of[i] {
                Some(k) => v.xor_assign(&self.rows[k as usize]),
                None => break,
            }
        }
        v
    }

    /// Adds `v` if it is independent of the rows so far; returns whether it was.
    pub fn insert(&mut self, v: &BitSet) -> bool {
        let r = self.reduce(v);
        match r.first_one() {
            Some(i) => {
                self.pivot_of[i] = Some(self.rows.len() as u32);
                self.rows.push(r);
                true
            }
            None => false,
        }
    }

    pub fn spans(&self, v: &BitSet) -> bool {
        self.reduce(v).is_zero()
    }
}

pub fn rank(rows: &[BitSet]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let mut ech = Echelon::new(first.len());
    rows.iter().filter(|r| ech.insert(r)).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![
            BitSet::from_indices(8, [0, 1]),
            BitSet::from_indices(8, [1, 2]),
            BitSet::from_indices(8, [0, 2]),
            BitSet::from_indices(8, [7]),
        ];
        assert_eq!(rank(&rows), 3);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn spans_detects_membership() {
        let mut e = Echelon::new(70);
        assert!(e.insert(&BitSet::from_indices(70, [3, 65])));
        assert!(e.insert(&BitSet::from_indices(70, [65, 69])));
        assert!(e.spans(&BitSet::from_indices(70, [3, 69])));
        assert!(!e.spans(&BitSet::from_indices(70, [3])));
        assert!(!e.insert(&BitSet::from_indices(70, [3, 69])));
    }
}
