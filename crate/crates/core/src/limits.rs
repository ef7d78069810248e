/// Enumeration bounds shared by every exhaustive check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest number of group elements any enumeration may visit.
    pub elements: u64,
    /// Largest number of flags any flag enumeration may visit.
    pub flags: u64,
}

pub const DEFAULT_ELEMENT_BOUND: u64 = 2_000_000;
pub const DEFAULT_FLAG_BOUND: u64 = 100_000;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            elements: DEFAULT_ELEMENT_BOUND,
            flags: DEFAULT_FLAG_BOUND,
        }
    }
}

impl Limits {
    /// Default flag bound with the given element bound.
    pub fn with_element_bound(elements: u64) -> Limits {
        Limits {
            elements,
            ..Limits::default()
        }
    }
}
