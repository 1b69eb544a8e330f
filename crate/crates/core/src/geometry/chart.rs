use std::sync::Arc;

use super::GeometryError;
use crate::symexpr::{Symbol, SymbolTable};

/// A single coordinate chart: ordered coordinates plus free parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    coords: Vec<Symbol>,
    params: Vec<Symbol>,
    table: SymbolTable,
}

impl Chart {
    pub fn new(coords: &[&str], params: &[&str]) -> Result<Arc<Chart>, GeometryError> {
        if coords.is_empty() {
            return Err(GeometryError::EmptyChart);
        }
        let coords: Vec<Symbol> = coords.iter().map(|c| Symbol::coordinate(c)).collect();
        let params: Vec<Symbol> = params.iter().map(|p| Symbol::parameter(p)).collect();
        let table = SymbolTable::from_symbols(coords.iter().chain(&params).cloned())?;
        Ok(Arc::new(Chart {
            coords,
            params,
            table,
        }))
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Symbol] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &str {
        self.coords[i].name()
    }

    pub fn coord_names(&self) -> Vec<&str> {
        self.coords.iter().map(Symbol::name).collect()
    }

    pub fn params(&self) -> &[Symbol] {
        &self.params
    }

    pub fn table(&self) -> &SymbolTable {
        &self.table
    }
}
