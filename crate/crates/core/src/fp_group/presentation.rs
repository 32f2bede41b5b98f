use super::{FpGroupError, Word};

/// A finitely presented group `⟨generators | relators⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    generator_names: Vec<String>,
    relators: Vec<Word>,
}

impl GroupPresentation {
    /// Empty relators are dropped.
    pub fn new(generator_names: Vec<String>, relators: Vec<Word>) -> Self {
        GroupPresentation {
            generator_names,
            relators: relators.into_iter().filter(|r| !r.is_empty()).collect(),
        }
    }

    /// Parses each relator over single-letter generator names.
    pub fn parse(names: &[&str], relators: &[&str]) -> Result<Self, FpGroupError> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let relators = relators
            .iter()
            .map(|r| Word::parse(r, &names))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GroupPresentation::new(names, relators))
    }

    /// `T_d = ⟨a,b,c | a², b², c², (ab)³, (ac)², (bc)^d⟩`.
    pub fn triangle(d: usize) -> Self {
        let bc = format!("(bc)^{d}");
        GroupPresentation::parse(&["a", "b", "c"], &["a^2", "b^2", "c^2", "(ab)^3", "(ac)^2", &bc])
            .expect("static presentation")
    }

    /// `H_d`: the triangle group with the extra relator `(bac)^d`.
    pub fn geodesic(d: usize) -> Self {
        let mut p = GroupPresentation::triangle(d);
        let bac = Word::parse(&format!("(bac)^{d}"), &p.generator_names).expect("static word");
        p.relators.push(bac);
        p
    }

    pub fn generator_count(&self) -> usize {
        self.generator_names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// The same generators with `extra` appended to the relators.
    pub fn with_relators(&self, extra: &[Word]) -> Self {
        let mut relators = self.relators.clone();
        relators.extend(extra.iter().cloned());
        GroupPresentation::new(self.generator_names.clone(), relators)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, FpGroupError> {
        Word::parse(text, &self.generator_names)
    }
}

pub fn triangle_presentation(d: usize) -> GroupPresentation {
    GroupPresentation::triangle(d)
}

pub fn geodesic_presentation(d: usize) -> GroupPresentation {
    GroupPresentation::geodesic(d)
}
