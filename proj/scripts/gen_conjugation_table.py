#!/usr/bin/env python3
"""Regenerate data/lexicons/usp-conjugation.tsv.

Regular -ar/-er/-ir paradigms by rule plus a handful of irregulars, present
and preterite, all six person-number slots.  Forms are stored lowercase.
Colliding forms keep their first row and drop the rest (e.g. 1pl present ==
1pl preterite for -ar/-ir verbs; "ser" and "ir" share a preterite), so the
emitted file loads cleanly even in strict mode.
"""

AR = ["hablar", "trabajar", "estudiar", "caminar", "cantar", "bailar", "tomar",
      "llevar", "pasar", "quedar", "dejar", "llamar", "mirar", "esperar",
      "ayudar", "comprar", "escuchar", "terminar", "necesitar", "usar",
      "ganar", "lavar", "limpiar", "cocinar", "cortar", "saludar"]
ER = ["comer", "beber", "aprender", "correr", "vender", "comprender",
      "responder", "meter", "temer"]
IR = ["vivir", "escribir", "recibir", "abrir", "subir", "partir", "decidir",
      "compartir", "asistir", "permitir"]

PERSONS = ["1sg", "2sg", "3sg", "1pl", "2pl", "3pl"]

ENDINGS = {
    "ar": {"present": ["o", "as", "a", "amos", "áis", "an"],
           "preterite": ["é", "aste", "ó", "amos", "asteis", "aron"]},
    "er": {"present": ["o", "es", "e", "emos", "éis", "en"],
           "preterite": ["í", "iste", "ió", "imos", "isteis", "ieron"]},
    "ir": {"present": ["o", "es", "e", "imos", "ís", "en"],
           "preterite": ["í", "iste", "ió", "imos", "isteis", "ieron"]},
}

# ser before ir: they share a preterite and ser keeps it
IRREGULAR = [
    ("tener", {"present": ["tengo", "tienes", "tiene", "tenemos", "tenéis", "tienen"],
               "preterite": ["tuve", "tuviste", "tuvo", "tuvimos", "tuvisteis", "tuvieron"]}),
    ("hacer", {"present": ["hago", "haces", "hace", "hacemos", "hacéis", "hacen"],
               "preterite": ["hice", "hiciste", "hizo", "hicimos", "hicisteis", "hicieron"]}),
    ("ser", {"present": ["soy", "eres", "es", "somos", "sois", "son"],
             "preterite": ["fui", "fuiste", "fue", "fuimos", "fuisteis", "fueron"]}),
    ("ir", {"present": ["voy", "vas", "va", "vamos", "vais", "van"],
            "preterite": ["fui", "fuiste", "fue", "fuimos", "fuisteis", "fueron"]}),
    ("estar", {"present": ["estoy", "estás", "está", "estamos", "estáis", "están"],
               "preterite": ["estuve", "estuviste", "estuvo", "estuvimos", "estuvisteis",
                             "estuvieron"]}),
    ("poder", {"present": ["puedo", "puedes", "puede", "podemos", "podéis", "pueden"],
               "preterite": ["pude", "pudiste", "pudo", "pudimos", "pudisteis", "pudieron"]}),
    ("decir", {"present": ["digo", "dices", "dice", "decimos", "decís", "dicen"],
               "preterite": ["dije", "dijiste", "dijo", "dijimos", "dijisteis", "dijeron"]}),
    ("venir", {"present": ["vengo", "vienes", "viene", "venimos", "venís", "vienen"],
               "preterite": ["vine", "viniste", "vino", "vinimos", "vinisteis", "vinieron"]}),
]


def main():
    rows = []
    seen = set()

    def add(form, lemma, tense, person):
        if form in seen:
            return
        seen.add(form)
        rows.append((form, lemma, tense, person))

    for lemma in AR + ER + IR:
        conj = ENDINGS[lemma[-2:]]
        stem = lemma[:-2]
        for tense in ("present", "preterite"):
            for person, ending in zip(PERSONS, conj[tense]):
                add(stem + ending, lemma, tense, person)
    for lemma, forms in IRREGULAR:
        for tense in ("present", "preterite"):
            for person, form in zip(PERSONS, forms[tense]):
                add(form, lemma, tense, person)

    header = ["# Spanish conjugation table: form<TAB>lemma<TAB>tense<TAB>person-number",
              "# generated by scripts/gen_conjugation_table.py; edit the script, not this file"]
    with open("data/lexicons/usp-conjugation.tsv", "w", encoding="utf-8") as f:
        for line in header:
            f.write(line + "\n")
        for row in rows:
            f.write("\t".join(row) + "\n")
    print("wrote %d rows (%d dropped as duplicates)" % (len(rows),
          sum(len(ENDINGS[l[-2:]]["present"]) + len(ENDINGS[l[-2:]]["preterite"])
              for l in AR + ER + IR) + 8 * 12 - len(rows)))


if __name__ == "__main__":
    main()
