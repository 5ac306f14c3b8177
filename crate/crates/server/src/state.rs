use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use hintbits_client::api::StoreInfo;
use hintbits_core::embedding::EmbeddingStore;

/// A loaded embedding kept alive for the duration of the process.
#[derive(Debug)]
pub struct StoreEntry {
    pub store: EmbeddingStore,
    pub info: StoreInfo,
}

#[derive(Clone, Default)]
pub struct AppState {
    stores: Arc<RwLock<HashMap<String, Arc<StoreEntry>>>>,
}

impl AppState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get_store(&self, id: &str) -> Option<Arc<StoreEntry>> {
        self.stores.read().expect("store map lock").get(id).cloned()
    }

    pub fn insert_store(&self, entry: StoreEntry) -> Arc<StoreEntry> {
        let entry = Arc::new(entry);
        self.stores
            .write()
            .expect("store map lock")
            .insert(entry.info.store_id.clone(), entry.clone());
        entry
    }

    pub fn list_stores(&self) -> Vec<StoreInfo> {
        let mut infos: Vec<StoreInfo> = self
            .stores
            .read()
            .expect("store map lock")
            .values()
            .map(|e| e.info.clone())
            .collect();
        infos.sort_by(|a, b| a.store_id.cmp(&b.store_id));
        infos
    }
}
