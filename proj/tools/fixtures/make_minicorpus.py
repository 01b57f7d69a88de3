#!/usr/bin/env python3
"""Generate the bundled mini-corpus: abstracts, lexicon, training questions,
gold answers and a pipeline config.

Gold abstracts each own a unique condition or drug and contain exactly one
sentence holding every phrase of their gold question plus a phrase of the
question's focus type. Background abstracts never use the question cue words
(drug of choice, dosage, treat/manage, cause, adverse).

Usage: make_minicorpus.py [output_dir]   (default: data/minicorpus)
"""

import json
import random
import sys
from pathlib import Path

SEED = 20100101

KRAS_ABSTRACT = {
    "id": "16169155",
    "title": "Mutant KRAS in the initiation of pancreatic cancer.",
    "abstract": (
        "Pancreatic ductal adenocarcinoma is the most common pancreatic neoplasm. There are approximately 33,000 "
        "new cases of pancreatic ductal adenocarcinoma annually in the United States with approximately the same "
        "number of deaths. Surgery represents the only opportunity for cure, but this is restricted to early stage "
        "pancreatic cancer. Pancreatic ductal adenocarcinoma evolves from a progressive cascade of cellular, "
        "morphological and architectural changes from normal ductal epithelium through preneoplastic lesions termed "
        "pancreatic intraepithelial neoplasia (PanIN). These PanIN lesions are in turn associated with somatic "
        "alterations in canonical oncogenes and tumor suppressor genes. Most notably, early PanIN lesions and almost "
        "all pancreatic ductal adenocarcinomas involve mutations in the K-ras oncogene. Thus, it is believed that "
        "activating K-ras mutations are critical for initiation of pancreatic ductal carcinogenesis. This has been "
        "proven through elegant genetically engineered mouse models in which a Cre-activated K-Ras(G12D) allele is "
        "knocked into the endogenous K-Ras locus and crossed with mice expressing Cre recombinase in pancreatic "
        "tissue. As a result, mechanistic insights are now possible into how K-Ras contributes to pancreatic ductal "
        "carcinogenesis, what cooperating events are required, and armed with this knowledge, new therapeutic "
        "approaches can be pursued and tested."
    ),
    "label": "non_evidence",
}

# surface, canonical, tag
BASE_LEXICON = [
    # vocabulary of the KRAS reference abstract
    ("pancreatic ductal adenocarcinoma", "pancreatic adenocarcinoma", "Neoplastic Process"),
    ("pancreatic adenocarcinoma", "pancreatic adenocarcinoma", "Neoplastic Process"),
    ("pancreatic neoplasm", "neoplasm, pancreatic", "Neoplastic Process"),
    ("pancreatic cancer", "pancreatic cancer", "Neoplastic Process"),
    ("early stage pancreatic cancer", "stage pancreatic cancer", "Neoplastic Process"),
    ("pancreatic intraepithelial neoplasia", "intraepithelial neoplasm", "Neoplastic Process"),
    ("panin", "intraepithelial neoplasm", "Neoplastic Process"),
    ("carcinogenesis", "carcinogenesis", "Neoplastic Process"),
    ("common", "common", "Qualitative Concept"),
    ("normal", "normal", "Qualitative Concept"),
    ("approximately", "approximately", "Quantitative Concept"),
    ("number", "number", "Quantitative Concept"),
    ("new", "new", "Temporal Concept"),
    ("annually", "annually", "Temporal Concept"),
    ("early", "early", "Temporal Concept"),
    ("cases", "cases", "Idea or Concept"),
    ("united states", "united states", "Geographic Area"),
    ("deaths", "deaths", "Organism Function"),
    ("surgery", "surgery", "Therapeutic or Preventive Procedure"),
    ("progressive", "progressive", "Qualitative Concept"),
    ("ductal epithelium", "epithelium", "Tissue"),
    ("lesions", "lesions", "Finding"),
    ("somatic", "soma", "Body Location or Region"),
    ("oncogenes", "oncogenes", "Gene or Genome"),
    ("tumor suppressor genes", "genes, tumor suppressor", "Gene or Genome"),
    ("mutations", "mutations", "Genetic Function"),
    ("k-ras oncogene", "k-ras oncogene", "Gene or Genome"),
    ("k-ras", "kras", "Gene or Genome"),
    ("kras", "kras", "Gene or Genome"),
    ("initiation", "initiation", "Temporal Concept"),
    ("genetically engineered", "genetic engineering", "Molecular Biology Research Technique"),
    ("mouse", "mouse", "Mammal"),
    ("mice", "mice", "Mammal"),
    ("models", "models", "Intellectual Product"),
    ("allele", "allele", "Gene or Genome"),
    ("endogenous", "endogenous", "Functional Concept"),
    ("cre recombinase", "cre recombinase", "Enzyme"),
    ("pancreatic tissue", "tissue", "Tissue"),
    ("knowledge", "knowledge", "Intellectual Product"),
    ("therapeutic", "therapeutic", "Functional Concept"),
    ("events", "events", "Event"),
    # trial and cohort vocabulary
    ("randomized", "randomized", "Research Activity"),
    ("randomised", "randomized", "Research Activity"),
    ("controlled trial", "controlled trial", "Research Activity"),
    ("trial", "trial", "Research Activity"),
    ("placebo", "placebo", "Pharmacologic Substance"),
    ("phase iii", "phase iii", "Research Activity"),
    ("survival", "survival", "Organism Function"),
    ("progression-free survival", "progression-free survival", "Clinical Attribute"),
    ("quality of life", "quality of life", "Idea or Concept"),
    ("primary endpoint", "primary endpoint", "Idea or Concept"),
    ("response rate", "response rate", "Quantitative Concept"),
    ("cohort", "cohort", "Population Group"),
    ("retrospective", "retrospective", "Temporal Concept"),
    ("prospective", "prospective", "Temporal Concept"),
    ("prognosis", "prognosis", "Finding"),
    ("prognostic factor", "prognostic factor", "Finding"),
    ("tumor size", "tumor size", "Finding"),
    ("lymph node involvement", "lymph node involvement", "Finding"),
    ("ca 19-9", "ca 19-9", "Laboratory or Test Result"),
    ("five-year survival", "five-year survival", "Clinical Attribute"),
    ("median", "median", "Quantitative Concept"),
    ("months", "months", "Temporal Concept"),
    ("weeks", "weeks", "Temporal Concept"),
    ("elderly", "elderly", "Population Group"),
    ("adults", "adults", "Population Group"),
    ("chemotherapy", "chemotherapy", "Therapeutic or Preventive Procedure"),
    ("combination chemotherapy", "combination chemotherapy", "Therapeutic or Preventive Procedure"),
    ("radiotherapy", "radiotherapy", "Therapeutic or Preventive Procedure"),
    ("resection", "resection", "Therapeutic or Preventive Procedure"),
    ("computed tomography", "computed tomography", "Diagnostic Procedure"),
    ("endoscopic ultrasound", "endoscopic ultrasound", "Diagnostic Procedure"),
    ("biopsy", "biopsy", "Diagnostic Procedure"),
    ("surveillance", "surveillance", "Health Care Activity"),
    ("significant", "significant", "Qualitative Concept"),
    ("pancreas", "pancreas", "Body Part, Organ, or Organ Component"),
    ("liver", "liver", "Body Part, Organ, or Organ Component"),
    # basic science vocabulary
    ("cell line", "cell line", "Cell"),
    ("cancer cells", "cancer cells", "Cell"),
    ("proliferation", "proliferation", "Organism Function"),
    ("apoptosis", "apoptosis", "Organism Function"),
    ("xenograft", "xenograft", "Tissue"),
    ("signaling", "signaling", "Genetic Function"),
    ("gene expression", "gene expression", "Genetic Function"),
    ("knockdown", "knockdown", "Molecular Biology Research Technique"),
    ("sequencing", "sequencing", "Molecular Biology Research Technique"),
    ("stroma", "stroma", "Tissue"),
    ("fibroblasts", "fibroblasts", "Cell"),
    ("protein", "protein", "Amino Acid, Peptide, or Protein"),
    ("mitochondria", "mitochondria", "Cell Component"),
    ("smad4", "smad4", "Gene or Genome"),
    ("cdkn2a", "cdkn2a", "Gene or Genome"),
    ("tp53", "tp53", "Gene or Genome"),
    ("myc", "myc", "Gene or Genome"),
    ("brca2", "brca2", "Gene or Genome"),
    ("hedgehog", "hedgehog", "Gene or Genome"),
    ("autophagy", "autophagy", "Organism Function"),
    ("metabolism", "metabolism", "Organism Function"),
    ("invasion", "invasion", "Pathologic Function"),
    ("metastasis", "metastasis", "Neoplastic Process"),
    # laboratory results (focus of class 2)
    ("serum creatinine", "serum creatinine", "Laboratory or Test Result"),
    ("neutrophil count", "neutrophil count", "Laboratory or Test Result"),
    ("bilirubin level", "bilirubin level", "Laboratory or Test Result"),
    ("fasting glucose", "fasting glucose", "Laboratory or Test Result"),
    ("platelet count", "platelet count", "Laboratory or Test Result"),
    ("body weight", "body weight", "Organism Attribute"),
    # question cues
    ("drug of choice", "drug of choice", "Clinical Drug"),
    ("dosage", "dosage", "Quantitative Concept"),
    ("treat", "treatment", "Health Care Activity"),
    ("treatment", "treatment", "Health Care Activity"),
    ("manage", "treatment", "Health Care Activity"),
    ("cause", "cause", "Functional Concept"),
    ("adverse", "adverse", "Qualitative Concept"),
    # patient-specific cues (unanswerable questions)
    ("patient", "patient", "Patient or Disabled Group"),
    ("today", "today", "Temporal Concept"),
    ("tomorrow", "tomorrow", "Temporal Concept"),
    ("family", "family", "Family Group"),
    ("home", "home", "Spatial Concept"),
]

# Question-pool entities: used by training questions and background abstracts.
POOL_CONDITIONS = [
    ("metastatic pancreatic cancer", "Neoplastic Process"),
    ("locally advanced pancreatic cancer", "Neoplastic Process"),
    ("pancreatic neuroendocrine tumor", "Neoplastic Process"),
    ("cholangiocarcinoma", "Neoplastic Process"),
    ("ampullary carcinoma", "Neoplastic Process"),
    ("chronic pancreatitis", "Disease or Syndrome"),
    ("obstructive jaundice", "Disease or Syndrome"),
    ("pancreatic fistula", "Pathologic Function"),
    ("delayed gastric emptying", "Pathologic Function"),
    ("new-onset diabetes", "Disease or Syndrome"),
    ("peritoneal metastasis", "Neoplastic Process"),
    ("liver metastasis", "Neoplastic Process"),
    ("venous thromboembolism", "Disease or Syndrome"),
    ("depression", "Mental Process"),
    ("anorexia", "Sign or Symptom"),
    ("fatigue", "Sign or Symptom"),
    ("pruritus", "Sign or Symptom"),
    ("steatorrhea", "Sign or Symptom"),
]
POOL_DRUGS = [
    "gemcitabine", "oxaliplatin", "irinotecan", "fluorouracil", "leucovorin", "cisplatin", "docetaxel",
    "metformin", "ondansetron", "dexamethasone", "morphine", "fentanyl", "insulin", "celecoxib", "olaparib",
    "pembrolizumab", "warfarin", "heparin",
]
POOL_FINDINGS = [
    ("neutropenia", "Sign or Symptom"),
    ("diarrhea", "Sign or Symptom"),
    ("hepatotoxicity", "Pathologic Function"),
    ("cardiotoxicity", "Pathologic Function"),
    ("peripheral neuropathy", "Disease or Syndrome"),
    ("thrombocytopenia", "Disease or Syndrome"),
    ("alopecia", "Sign or Symptom"),
    ("mucositis", "Disease or Syndrome"),
]
PROCEDURES = [
    ("endoscopic stenting", "Therapeutic or Preventive Procedure"),
    ("gastrojejunostomy", "Therapeutic or Preventive Procedure"),
    ("cystgastrostomy", "Therapeutic or Preventive Procedure"),
    ("paracentesis", "Therapeutic or Preventive Procedure"),
    ("celiac plexus block", "Therapeutic or Preventive Procedure"),
]

# Gold entities: each appears in exactly one abstract.
GOLD_CLASS1 = [  # condition, tag, drug
    ("acute pancreatitis", "Disease or Syndrome", "meperidine"),
    ("pancreatic exocrine insufficiency", "Disease or Syndrome", "pancrelipase"),
    ("cancer-associated thrombosis", "Disease or Syndrome", "dalteparin"),
    ("malignant bowel obstruction", "Disease or Syndrome", "octreotide"),
    ("chemotherapy-induced nausea", "Sign or Symptom", "aprepitant"),
    ("cancer cachexia", "Disease or Syndrome", "megestrol"),
    ("neuropathic cancer pain", "Sign or Symptom", "pregabalin"),
    ("hepatic encephalopathy", "Disease or Syndrome", "rifaximin"),
]
GOLD_CLASS2 = [  # drug, condition context (pool), lab result
    ("nab-paclitaxel", "serum creatinine"),
    ("erlotinib", "neutrophil count"),
    ("capecitabine", "bilirubin level"),
    ("everolimus", "fasting glucose"),
    ("sunitinib", "platelet count"),
]
GOLD_CLASS3 = [  # condition, tag, procedure
    ("biliary obstruction", "Disease or Syndrome", "endoscopic stenting"),
    ("gastric outlet obstruction", "Disease or Syndrome", "gastrojejunostomy"),
    ("pancreatic pseudocyst", "Disease or Syndrome", "cystgastrostomy"),
    ("malignant ascites", "Pathologic Function", "paracentesis"),
]
GOLD_CLASS4 = [  # drug, finding, finding tag
    ("bevacizumab", "gastrointestinal perforation", "Pathologic Function"),
    ("cetuximab", "acneiform rash", "Sign or Symptom"),
    ("ipilimumab", "immune colitis", "Disease or Syndrome"),
]

GENES = ["smad4", "cdkn2a", "tp53", "myc", "brca2", "hedgehog"]


def cap(text):
    return text[0].upper() + text[1:]


class Builder:
    def __init__(self):
        self.rng = random.Random(SEED)
        self.docs = []
        self.gold = []
        self.next_id = 90000001

    def new_id(self):
        doc_id = str(self.next_id)
        self.next_id += 1
        return doc_id

    def add(self, title, sentences, label):
        doc_id = self.new_id()
        self.docs.append({"id": doc_id, "title": title, "abstract": " ".join(sentences), "label": label})
        return doc_id

    def gold_doc(self, qid, question, title, context, answer, closing, label):
        """context sentences, then the answer at a varying position, then closing sentences."""
        position = self.rng.randint(1, len(context))
        sentences = context[:position] + [answer] + context[position:] + closing
        doc_id = self.add(title, sentences, label)
        self.gold.append((qid, question, doc_id, position))


def build_gold(b):
    q = 0
    for condition, _, drug in GOLD_CLASS1:
        q += 1
        label = "intervention" if q % 2 else "non_intervention"
        design = "a randomized controlled trial" if label == "intervention" else "a prospective cohort"
        b.gold_doc(
            f"G{q:02d}",
            f"What is the drug of choice for {condition}?",
            f"{cap(drug)} in {condition}: results of {design}.",
            [
                f"{cap(condition)} remains a frequent complication in pancreatic cancer.",
                f"We enrolled 120 adults with {condition} in {design}.",
                f"Response rate and quality of life were assessed at 12 weeks.",
            ],
            f"{cap(drug)} was the drug of choice for {condition} in this study.",
            [f"Median survival did not differ between groups.", f"These data support {drug} in {condition}."],
            label,
        )
    for drug, lab in GOLD_CLASS2:
        q += 1
        b.gold_doc(
            f"G{q:02d}",
            f"What is the dosage of {drug}?",
            f"A phase III trial of {drug} in metastatic pancreatic cancer.",
            [
                f"{cap(drug)} has shown activity in metastatic pancreatic cancer.",
                f"Adults were randomized to {drug} or placebo.",
                f"Progression-free survival was the primary endpoint.",
            ],
            f"The dosage of {drug} was adjusted to {lab} every two weeks.",
            [f"Median overall survival was 9.1 months with {drug}.", f"{cap(drug)} merits further study."],
            "intervention",
        )
    for condition, _, procedure in GOLD_CLASS3:
        q += 1
        b.gold_doc(
            f"G{q:02d}",
            f"How should I treat {condition}?",
            f"Outcomes of {condition} in a retrospective cohort.",
            [
                f"{cap(condition)} is common in advanced pancreatic cancer.",
                f"We reviewed a retrospective cohort of 210 adults with {condition}.",
                f"Computed tomography confirmed the diagnosis in all cases.",
            ],
            f"Treatment of {condition} with {procedure} relieved symptoms within 14 days.",
            [f"Survival was limited by progressive disease.", f"Early referral for {procedure} is reasonable."],
            "non_intervention",
        )
    for drug, finding, _ in GOLD_CLASS4:
        q += 1
        b.gold_doc(
            f"G{q:02d}",
            f"Can {drug} cause adverse {finding}?",
            f"Safety of {drug} in pancreatic cancer: a prospective cohort.",
            [
                f"{cap(drug)} is used off label in pancreatic cancer.",
                f"We followed a prospective cohort of 95 adults receiving {drug}.",
                f"Serum creatinine and body weight were recorded monthly.",
            ],
            f"{cap(drug)} can cause adverse {finding} in elderly adults.",
            [f"Median follow-up was 11 months.", f"Clinicians should monitor {drug} recipients closely."],
            "non_intervention",
        )


def build_background(b):
    rng = b.rng
    conditions = [c for c, _ in POOL_CONDITIONS]
    for i in range(10):
        a, c = rng.sample(POOL_DRUGS, 2)
        cond = conditions[i % len(conditions)]
        finding = POOL_FINDINGS[i % len(POOL_FINDINGS)][0]
        b.add(
            f"{cap(a)} plus {c} for {cond}: a randomized phase III trial.",
            [
                f"Adults with {cond} were randomized to {a} plus {c} or {a} alone.",
                f"The primary endpoint was overall survival.",
                f"Grade 3 {finding} was more frequent with the combination.",
                f"Median overall survival was {8 + i % 3}.{i % 10} months versus {6 + i % 2}.{(i * 3) % 10} months.",
                f"Combination chemotherapy is a reasonable option for fit adults with {cond}.",
            ],
            "intervention",
        )
    for i in range(9):
        cond = conditions[(i + 5) % len(conditions)]
        b.add(
            f"Prognostic factors in {cond}: a retrospective cohort.",
            [
                f"We reviewed a retrospective cohort of {200 + 17 * i} adults with {cond}.",
                f"Elevated CA 19-9 predicted poor prognosis.",
                f"Tumor size and lymph node involvement were independent prognostic factors.",
                f"Five-year survival remained below {10 + i} percent.",
                f"Prognostic models may guide surveillance after resection.",
            ],
            "non_intervention",
        )
    for i in range(10):
        g1, g2 = rng.sample(GENES, 2)
        process = ["autophagy", "metabolism", "invasion", "apoptosis", "proliferation"][i % 5]
        b.add(
            f"{g1.upper()} regulates {process} in pancreatic cancer cells.",
            [
                f"{g1.upper()} signaling controls {process} in pancreatic cancer cells.",
                f"Knockdown of {g1.upper()} reduced proliferation in a cell line panel and in mouse xenograft models.",
                f"Loss of {g2.upper()} altered gene expression in stroma and fibroblasts.",
                f"Sequencing identified recurrent mutations in {g2.upper()}.",
                f"These results link {g1.upper()} to {process} and metastasis.",
            ],
            "non_evidence",
        )


def training_questions(rng):
    conditions = [c for c, _ in POOL_CONDITIONS]
    findings = [f for f, _ in POOL_FINDINGS]
    rows = []
    class1 = [
        "What is the drug of choice for {c}?",
        "Which drug of choice is preferred in {c}?",
        "What is the current drug of choice for {c}?",
        "For {c}, what is the drug of choice?",
    ]
    class2 = [
        "What is the dosage of {d}?",
        "What dosage of {d} is recommended?",
        "How is the dosage of {d} adjusted?",
        "What dosage of {d} is used in pancreatic cancer?",
    ]
    class3 = ["How should I treat {c}?", "How should I manage {c}?", "What is the best treatment for {c}?"]
    class4 = ["Can {d} cause adverse {f}?", "Does {d} cause adverse {f}?"]
    unanswerable = [
        "Should my patient with {c} start {d} tomorrow?",
        "Can my patient take {d} today?",
        "Is my patient with {c} ready to go home tomorrow?",
        "Should I tell the family of my patient about {c}?",
        "Will my patient with {c} tolerate {d} today?",
        "How is my patient doing today?",
    ]

    def fill(template, i):
        return template.format(
            c=conditions[(i * 7 + 3) % len(conditions)],
            d=POOL_DRUGS[(i * 5 + 1) % len(POOL_DRUGS)],
            f=findings[(i * 3 + 2) % len(findings)],
        )

    for count, templates, cls in ((40, class1, "1"), (28, class2, "2"), (16, class3, "3"), (16, class4, "4")):
        for i in range(count):
            rows.append((fill(templates[i % len(templates)], i + len(rows)), "1", cls))
    for i in range(30):
        rows.append((fill(unanswerable[i % len(unanswerable)], i * 11), "0", "-"))
    rng.shuffle(rows)
    return rows


def lexicon_rows():
    rows = list(BASE_LEXICON)
    rows += [(c, c, t) for c, t in POOL_CONDITIONS]
    rows += [(d, d, "Pharmacologic Substance") for d in POOL_DRUGS]
    rows += [(f, f, t) for f, t in POOL_FINDINGS]
    rows += [(p, p, t) for p, t in PROCEDURES]
    rows += [(c, c, t) for c, t, _ in GOLD_CLASS1]
    rows += [(d, d, "Pharmacologic Substance") for _, _, d in GOLD_CLASS1]
    rows += [(d, d, "Pharmacologic Substance") for d, _ in GOLD_CLASS2]
    rows += [(c, c, t) for c, t, _ in GOLD_CLASS3]
    rows += [(d, d, "Pharmacologic Substance") for d, _, _ in GOLD_CLASS4]
    rows += [(f, f, t) for _, f, t in GOLD_CLASS4]
    return rows


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parents[2] / "data" / "minicorpus"
    out.mkdir(parents=True, exist_ok=True)
    b = Builder()
    b.docs.append(KRAS_ABSTRACT)
    build_gold(b)
    build_background(b)

    with open(out / "corpus.jsonl", "w", encoding="utf-8") as f:
        for doc in b.docs:
            f.write(json.dumps(doc, ensure_ascii=False) + "\n")

    with open(out / "lexicon.tsv", "w", encoding="utf-8") as f:
        f.write("# surface_form\tcanonical_phrase\tsemantic_tag\n")
        for row in lexicon_rows():
            f.write("\t".join(row) + "\n")

    with open(out / "questions.tsv", "w", encoding="utf-8") as f:
        f.write("# question_text\tanswerable\tclass\n")
        for row in training_questions(random.Random(SEED + 1)):
            f.write("\t".join(row) + "\n")

    with open(out / "gold.tsv", "w", encoding="utf-8") as f:
        f.write("# question_id\tquestion_text\tdoc_id\tsentence_index\n")
        for qid, question, doc_id, sentence in b.gold:
            f.write(f"{qid}\t{question}\t{doc_id}\t{sentence}\n")

    config = {
        "corpus": "corpus.jsonl",
        "lexicon": "lexicon.tsv",
        "questions": "questions.tsv",
        "gold": "gold.tsv",
        "index": "artifacts/index.txt",
        "models": "artifacts/models",
        "classifiers": {
            "doc": {"algorithm": "svm", "features": "combined", "penalty": 500, "gamma": 0.005, "kernel": "erbf"},
            "answerable": {"algorithm": "svm", "features": "combined", "penalty": 500, "gamma": 0.005, "kernel": "erbf"},
            "focus": {"algorithm": "svm", "features": "combined", "penalty": 500, "gamma": 0.005, "kernel": "erbf"},
        },
        "classify_documents": True,
        "gold_override": True,
        "top_k": 10,
        "bias": {"phrase": 1.0, "tag": 1.0},
        "term_mode": "phrases",
        "log_base": "e",
        "seed": 42,
        "cv_folds": 10,
        "host": "127.0.0.1",
        "port": 8080,
    }
    with open(out / "cliniqa.json", "w", encoding="utf-8") as f:
        json.dump(config, f, indent=2)
        f.write("\n")
    print(f"{len(b.docs)} abstracts, {len(b.gold)} gold questions, {len(lexicon_rows())} lexicon entries -> {out}")


if __name__ == "__main__":
    main()
