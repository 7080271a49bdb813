use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// An ordered, interned list of variable names.
///
/// The position of a variable is its precedence in the global monomial
/// order: index 0 is the largest variable. Two `Vars` built from the same
/// names share storage, so equality is a pointer comparison in the common
/// case.
#[derive(Clone)]
pub struct Vars(Arc<[String]>);

fn interner() -> &'static Mutex<HashMap<Vec<String>, Vars>> {
    static INTERN: OnceLock<Mutex<HashMap<Vec<String>, Vars>>> = OnceLock::new();
    INTERN.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Vars {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut table = interner().lock().expect("variable interner poisoned");
        table
            .entry(names.clone())
            .or_insert_with(|| Vars(Arc::from(names)))
            .clone()
    }

    /// `x1, …, xm`
    pub fn coords(m: usize) -> Self {
        Self::new((1..=m).map(|i| format!("x{i}")))
    }

    /// Coefficient ring of differential operators: `x1, …, xm, a, c`.
    pub fn weyl(m: usize) -> Self {
        Self::new(
            (1..=m)
                .map(|i| format!("x{i}"))
                .chain(["a".to_string(), "c".to_string()]),
        )
    }

    /// Parameter ring `a, c`.
    pub fn params() -> Self {
        Self::new(["a", "c"])
    }

    /// Phase space ring `x1, …, xm, xi1, …, xim, a, c`.
    pub fn phase(m: usize) -> Self {
        Self::new(
            (1..=m)
                .map(|i| format!("x{i}"))
                .chain((1..=m).map(|i| format!("xi{i}")))
                .chain(["a".to_string(), "c".to_string()]),
        )
    }

    /// Euler-operator ring `theta1, …, thetam, a, c`.
    pub fn theta(m: usize) -> Self {
        Self::new(
            (1..=m)
                .map(|i| format!("theta{i}"))
                .chain(["a".to_string(), "c".to_string()]),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

impl PartialEq for Vars {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Vars {}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vars{:?}", &self.0[..])
    }
}
