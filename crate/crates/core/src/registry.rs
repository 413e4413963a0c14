//! Name-keyed registries for interchangeable algorithms.

use crate::error::{Error, Result};

/// Anything that can be looked up by a stable name.
pub trait Named {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
}

/// Ordered collection of boxed strategies, selected by name at runtime.
pub struct Registry<T: ?Sized + Named> {
    kind: &'static str,
    entries: Vec<Box<T>>,
}

impl<T: ?Sized + Named> Registry<T> {
    pub fn empty(kind: &'static str) -> Self {
        Registry {
            kind,
            entries: Vec::new(),
        }
    }

    /// Adds `entry`, replacing any existing entry with the same name.
    pub fn register(&mut self, entry: Box<T>) {
        match self.entries.iter().position(|e| e.name() == entry.name()) {
            Some(i) => self.entries[i] = entry,
            None => self.entries.push(entry),
        }
    }

    pub fn get(&self, name: &str) -> Result<&T> {
        self.entries
            .iter()
            .find(|e| e.name() == name)
            .map(|e| e.as_ref())
            .ok_or_else(|| Error::UnknownStrategy {
                kind: self.kind,
                name: name.to_string(),
                available: self.names().join(", "),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.entries.iter().map(|e| e.as_ref())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    trait Greeter: Named {
        fn greet(&self) -> String;
    }

    struct Plain(&'static str);

    impl Named for Plain {
        fn name(&self) -> &'static str {
            self.0
        }
        fn description(&self) -> &'static str {
            "plain"
        }
    }

    impl Greeter for Plain {
        fn greet(&self) -> String {
            format!("hi from {}", self.0)
        }
    }

    #[test]
    fn lookup_and_replace() {
        let mut reg: Registry<dyn Greeter> = Registry::empty("greeter");
        reg.register(Box::new(Plain("a")));
        reg.register(Box::new(Plain("b")));
        reg.register(Box::new(Plain("a")));
        assert_eq!(reg.names(), vec!["a", "b"]);
        assert_eq!(reg.get("b").unwrap().greet(), "hi from b");
        let err = reg.get("c").err().unwrap().to_string();
        assert!(err.contains("unknown greeter `c`"));
        assert!(err.contains("a, b"));
    }
}
