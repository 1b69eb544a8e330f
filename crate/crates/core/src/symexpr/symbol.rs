use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::ExprError;

/// Role a symbol plays in a problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SymbolKind {
    Coordinate,
    Parameter,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    name: Arc<str>,
    kind: SymbolKind,
}

impl Symbol {
    pub fn new(name: &str, kind: SymbolKind) -> Self {
        Symbol {
            name: Arc::from(name),
            kind,
        }
    }

    pub fn coordinate(name: &str) -> Self {
        Self::new(name, SymbolKind::Coordinate)
    }

    pub fn parameter(name: &str) -> Self {
        Self::new(name, SymbolKind::Parameter)
    }

    pub fn unknown(name: &str) -> Self {
        Self::new(name, SymbolKind::Unknown)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> SymbolKind {
        self.kind
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Names in scope for parsing. Names are unique; kinds never change once added.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolTable {
    symbols: BTreeMap<String, Symbol>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a table from symbols, rejecting duplicate names.
    pub fn from_symbols<I: IntoIterator<Item = Symbol>>(symbols: I) -> Result<Self, ExprError> {
        let mut table = Self::new();
        for s in symbols {
            table.insert(s)?;
        }
        Ok(table)
    }

    pub fn insert(&mut self, symbol: Symbol) -> Result<(), ExprError> {
        if !is_identifier(symbol.name()) {
            return Err(ExprError::InvalidSymbolName(symbol.name().to_string()));
        }
        if self.symbols.contains_key(symbol.name()) {
            return Err(ExprError::DuplicateSymbol(symbol.name().to_string()));
        }
        self.symbols.insert(symbol.name().to_string(), symbol);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Symbol> {
        self.symbols.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.symbols.contains_key(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Symbol> {
        self.symbols.values()
    }

    pub fn of_kind(&self, kind: SymbolKind) -> impl Iterator<Item = &Symbol> {
        self.symbols.values().filter(move |s| s.kind() == kind)
    }

    /// A copy of this table extended with extra symbols.
    pub fn extended<I: IntoIterator<Item = Symbol>>(&self, extra: I) -> Result<Self, ExprError> {
        let mut t = self.clone();
        for s in extra {
            t.insert(s)?;
        }
        Ok(t)
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_names_rejected() {
        let err = SymbolTable::from_symbols([
            Symbol::coordinate("x"),
            Symbol::coordinate("x"),
            Symbol::coordinate("z"),
        ])
        .unwrap_err();
        assert_eq!(err, ExprError::DuplicateSymbol("x".into()));
    }

    #[test]
    fn identifiers() {
        assert!(is_identifier("λ"));
        assert!(is_identifier("x_1"));
        assert!(!is_identifier("1x"));
        assert!(!is_identifier(""));
    }
}
