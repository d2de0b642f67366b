//! Built-in parameter sets. The registry is data: name, extension degree m
//! and error weight t; everything else is derived.

/// A named (m, t) instantiation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParameterSet {
    pub name: &'static str,
    pub m: u32,
    pub t: usize,
    pub notes: &'static str,
}

impl ParameterSet {
    /// Code length n = 2^m.
    pub fn code_len(&self) -> usize {
        1 << self.m
    }

    /// Code dimension k = 2^m − m·t, which is also the coin length.
    pub fn code_dim(&self) -> usize {
        self.code_len() - self.m as usize * self.t
    }
}

pub const PARAMETER_SETS: &[ParameterSet] = &[
    ParameterSet {
        name: "tiny",
        m: 4,
        t: 2,
        notes: "[16, 8] code; exhaustive-test scale, no security",
    },
    ParameterSet {
        name: "small",
        m: 6,
        t: 4,
        notes: "[64, 40] code; fast tests, no security",
    },
    ParameterSet {
        name: "classic",
        m: 10,
        t: 50,
        notes: "[1024, 524] code; the customary benchmark instantiation",
    },
];

pub fn lookup(name: &str) -> Option<&'static ParameterSet> {
    PARAMETER_SETS.iter().find(|p| p.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_dimensions() {
        let tiny = lookup("tiny").unwrap();
        assert_eq!((tiny.code_len(), tiny.code_dim()), (16, 8));
        let small = lookup("small").unwrap();
        assert_eq!((small.code_len(), small.code_dim()), (64, 40));
        let classic = lookup("classic").unwrap();
        assert_eq!((classic.code_len(), classic.code_dim()), (1024, 524));
        assert!(lookup("absent").is_none());
    }

    #[test]
    fn all_sets_leave_room_for_two_blocks() {
        for p in PARAMETER_SETS {
            assert!(p.code_dim() >= 3, "{} too small", p.name);
        }
    }
}
