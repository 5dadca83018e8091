use std::fmt;
use std::str::FromStr;

use super::WordError;

/// Largest supported cone-point order. Words are expanded into single
/// occurrences, so a letter can cost up to this many entries.
pub const MAX_ORDER: u32 = 1 << 16;

/// Cone-point orders `(n_1, ..., n_r)` of an orbifold disk, listed in the
/// anticlockwise order of the points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbifoldSignature {
    orders: Vec<u32>,
}

impl OrbifoldSignature {
    pub fn new(orders: Vec<u32>) -> Result<Self, WordError> {
        if orders.is_empty() {
            return Err(WordError::InvalidSignature("at least one orbifold point is required".into()));
        }
        if let Some((i, n)) = orders.iter().enumerate().find(|(_, &n)| n < 2) {
            return Err(WordError::InvalidSignature(format!(
                "order of point {} is {n}, must be at least 2",
                i + 1
            )));
        }
        if let Some((i, n)) = orders.iter().enumerate().find(|(_, &n)| n > MAX_ORDER) {
            return Err(WordError::InvalidSignature(format!(
                "order of point {} is {n}, the limit is {MAX_ORDER}",
                i + 1
            )));
        }
        Ok(OrbifoldSignature { orders })
    }

    /// Number of orbifold points `r`.
    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    /// Order of the generator with 1-based index `generator`.
    pub fn order(&self, generator: usize) -> Result<u32, WordError> {
        self.check_generator(generator)?;
        Ok(self.orders[generator - 1])
    }

    pub fn check_generator(&self, generator: usize) -> Result<(), WordError> {
        if generator == 0 || generator > self.rank() {
            Err(WordError::SignatureMismatch { generator, rank: self.rank() })
        } else {
            Ok(())
        }
    }

    /// Whether words print in the single-letter alphabet `a..z`.
    pub fn uses_letters(&self) -> bool {
        self.rank() <= 26
    }
}

impl fmt::Display for OrbifoldSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for OrbifoldSignature {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut orders = Vec::new();
        let mut offset = 0;
        for part in s.split(',') {
            let trimmed = part.trim();
            let lead = part.len() - part.trim_start().len();
            let n: u32 = trimmed.parse().map_err(|_| WordError::Parse {
                input: s.to_string(),
                position: offset + lead,
                message: format!("expected a positive integer order, found {trimmed:?}"),
            })?;
            orders.push(n);
            offset += part.len() + 1;
        }
        OrbifoldSignature::new(orders)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let sig: OrbifoldSignature = "2,4".parse().unwrap();
        assert_eq!(sig.orders(), &[2, 4]);
        assert_eq!(sig.to_string(), "2,4");
        let spaced: OrbifoldSignature = " 3, 4 ,5".parse().unwrap();
        assert_eq!(spaced.orders(), &[3, 4, 5]);
    }

    #[test]
    fn rejects_small_orders_and_garbage() {
        assert!(matches!("1,4".parse::<OrbifoldSignature>(), Err(WordError::InvalidSignature(_))));
        assert!(matches!("2,65537".parse::<OrbifoldSignature>(), Err(WordError::InvalidSignature(_))));
        assert!("2,65536".parse::<OrbifoldSignature>().is_ok());
        assert!(matches!("".parse::<OrbifoldSignature>(), Err(WordError::Parse { position: 0, .. })));
        match "2,x".parse::<OrbifoldSignature>() {
            Err(WordError::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn generator_range() {
        let sig = OrbifoldSignature::new(vec![3, 4]).unwrap();
        assert_eq!(sig.order(2).unwrap(), 4);
        assert!(matches!(sig.order(3), Err(WordError::SignatureMismatch { generator: 3, rank: 2 })));
        assert!(sig.order(0).is_err());
    }
}
