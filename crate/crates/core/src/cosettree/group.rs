use std::fmt;

use super::CosetError;

/// A finite group by multiplication table; element 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    name: String,
    names: Vec<String>,
    table: Vec<Vec<u8>>,
    inverses: Vec<u8>,
}

impl FiniteGroup {
    fn from_table(name: String, names: Vec<String>, table: Vec<Vec<u8>>) -> Self {
        let n = table.len();
        let inverses = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == 0).expect("table is a group") as u8)
            .collect();
        Self { name, names, table, inverses }
    }

    /// `C_n`, with label `l` standing for the `l`-th power of a generator.
    pub fn cyclic(n: u8) -> Self {
        assert!(n >= 1, "cyclic group needs at least one element");
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let names = (0..n).map(|l| if l == 1 { String::new() } else { format!("^{l}") }).collect();
        Self::from_table(format!("C{n}"), names, table)
    }

    /// `S₃` acting on `{1, 2, 3}`; `a·b` applies `b` first.
    pub fn symmetric3() -> Self {
        let perms: [[u8; 3]; 6] = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
        let names = ["", "(12)", "(13)", "(23)", "(123)", "(132)"].map(String::from).to_vec();
        let index = |q: [u8; 3]| perms.iter().position(|&r| r == q).unwrap() as u8;
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| index([a[b[0] as usize], a[b[1] as usize], a[b[2] as usize]])).collect())
            .collect();
        Self::from_table("S3".into(), names, table)
    }

    /// `c2`, `c3`, …, or `s3`.
    pub fn parse(text: &str) -> Result<Self, CosetError> {
        let t = text.trim().to_ascii_lowercase();
        if t == "s3" {
            return Ok(Self::symmetric3());
        }
        t.strip_prefix('c')
            .and_then(|n| n.parse::<u8>().ok())
            .filter(|&n| n >= 1)
            .map(Self::cyclic)
            .ok_or_else(|| CosetError::Parse(format!("unknown finite group {text:?}")))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.table[a as usize][b as usize]
    }

    pub fn inv(&self, a: u8) -> u8 {
        self.inverses[a as usize]
    }

    /// Suffix written after `x[…]` for the label.
    pub fn label_suffix(&self, l: u8) -> &str {
        &self.names[l as usize]
    }

    pub fn label_from_suffix(&self, suffix: &str) -> Option<u8> {
        self.names.iter().position(|n| n == suffix).filter(|&l| l != 0).map(|l| l as u8)
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}
