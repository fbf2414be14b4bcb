use std::io::Read;
use std::path::Path;

use helfi_core::format::{FormatProfile, ParseOptions};
use helfi_core::model::{BookOrder, ExtractorInventory, Inventories, MorphInventory};
use helfi_core::validate::RuleConfig;

use crate::{ConfigArgs, Failure};

/// Reads a file, or stdin for `-`.
pub fn read_input(path: &Path) -> Result<Vec<u8>, Failure> {
    if path == Path::new("-") {
        let mut bytes = Vec::new();
        std::io::stdin().read_to_end(&mut bytes).map_err(|e| Failure::Io(format!("stdin: {e}")))?;
        return Ok(bytes);
    }
    std::fs::read(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

pub fn read_text(path: &Path) -> Result<String, Failure> {
    let bytes = read_input(path)?;
    String::from_utf8(bytes).map_err(|_| Failure::Domain(format!("{}: not valid UTF-8", path.display())))
}

fn optional<T>(path: Option<&Path>, parse: impl FnOnce(&str) -> Result<T, Failure>) -> Result<Option<T>, Failure> {
    path.map(|p| parse(&read_text(p)?)).transpose()
}

pub fn profile_file(path: &Path) -> Result<FormatProfile, Failure> {
    FormatProfile::parse(&read_text(path)?).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

impl ConfigArgs {
    pub fn profile(&self) -> Result<FormatProfile, Failure> {
        Ok(self.format_profile.as_deref().map(profile_file).transpose()?.unwrap_or_default())
    }

    pub fn rules(&self) -> Result<RuleConfig, Failure> {
        let path = self.rules.as_deref();
        let parsed = optional(path, |text| {
            RuleConfig::parse(text).map_err(|e| Failure::Domain(format!("{}: {e}", path.unwrap().display())))
        })?;
        Ok(parsed.unwrap_or_default())
    }

    pub fn inventories(&self) -> Result<Inventories, Failure> {
        let mut inv = Inventories::default();
        if let Some(order) = optional(self.book_order.as_deref(), |t| Ok(BookOrder::parse(t)))? {
            inv.book_order = order;
        }
        if let Some(kinds) = optional(self.extractors.as_deref(), |t| Ok(ExtractorInventory::parse(t)))? {
            inv.extractors = kinds;
        }
        if let Some(tags) = optional(self.morph_tags.as_deref(), |t| Ok(MorphInventory::parse(t)))? {
            inv.morph_tags = tags;
        }
        Ok(inv)
    }

    pub fn parse_options(&self, input: &Path) -> Result<ParseOptions, Failure> {
        Ok(ParseOptions { label: input.display().to_string(), profile: self.profile()?, inventories: self.inventories()? })
    }
}
