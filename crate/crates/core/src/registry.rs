//! Name-keyed registries of interchangeable strategies.

use thiserror::Error;

/// Something that can be registered and looked up by name.
pub trait Strategy: Send + Sync {
    fn name(&self) -> &'static str;

    fn summary(&self) -> &'static str {
        ""
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown {kind} {name:?}; available: {}", available.join(", "))]
pub struct UnknownStrategy {
    pub kind: &'static str,
    pub name: String,
    pub available: Vec<&'static str>,
}

/// Strategies in registration order. Lookup is by exact name.
pub struct Registry<S: ?Sized + Strategy> {
    kind: &'static str,
    entries: Vec<Box<S>>,
}

impl<S: ?Sized + Strategy> Registry<S> {
    pub fn new(kind: &'static str) -> Self {
        Self {
            kind,
            entries: Vec::new(),
        }
    }

    /// Registers `strategy`, replacing an earlier entry with the same name.
    pub fn register(&mut self, strategy: Box<S>) -> &mut Self {
        let name = strategy.name();
        match self.entries.iter().position(|s| s.name() == name) {
            Some(i) => self.entries[i] = strategy,
            None => self.entries.push(strategy),
        }
        self
    }

    pub fn with(mut self, strategy: Box<S>) -> Self {
        self.register(strategy);
        self
    }

    pub fn get(&self, name: &str) -> Result<&S, UnknownStrategy> {
        self.entries
            .iter()
            .find(|s| s.name() == name)
            .map(|s| s.as_ref())
            .ok_or_else(|| UnknownStrategy {
                kind: self.kind,
                name: name.to_string(),
                available: self.names(),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|s| s.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &S> {
        self.entries.iter().map(|s| s.as_ref())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    trait Greeter: Strategy {
        fn greet(&self) -> String;
    }

    struct Plain;
    struct Loud(&'static str);

    impl Strategy for Plain {
        fn name(&self) -> &'static str {
            "plain"
        }
    }
    impl Greeter for Plain {
        fn greet(&self) -> String {
            "hi".into()
        }
    }
    impl Strategy for Loud {
        fn name(&self) -> &'static str {
            "loud"
        }
    }
    impl Greeter for Loud {
        fn greet(&self) -> String {
            self.0.into()
        }
    }

    #[test]
    fn lookup_and_replace() {
        let mut reg: Registry<dyn Greeter> = Registry::new("greeter");
        reg.register(Box::new(Plain)).register(Box::new(Loud("HI")));
        assert_eq!(reg.names(), vec!["plain", "loud"]);
        assert_eq!(reg.get("loud").unwrap().greet(), "HI");
        reg.register(Box::new(Loud("HEY")));
        assert_eq!(reg.len(), 2);
        assert_eq!(reg.get("loud").unwrap().greet(), "HEY");
        let err = reg.get("quiet").err().unwrap();
        assert_eq!(err.to_string(), "unknown greeter \"quiet\"; available: plain, loud");
    }
}
