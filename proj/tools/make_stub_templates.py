#!/usr/bin/env python3
"""Regenerates the stub template inventory under data/templates/{fr,en}.

The stub texts are original placeholder wording. They mimic the structure of
a Quebec automobile contract (intro pages, declarations, base policy form,
one page per endorsement) without reproducing any regulator form.
"""

import json
import pathlib
import sys

ROOT = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else pathlib.Path(__file__).resolve().parents[1] / "data" / "templates")

BASE = {
    "en": [
        ("intro_cover", "introductory", 1, """<Insurer Name>
Automobile Insurance Contract

Contract number: <Contract Number>
Prepared for: <Insured Name>

Thank you for choosing us to protect your automobile and the people who ride in it. This package contains your declarations, the standard policy wording and every endorsement that changes it for your situation.
Please read each page carefully and keep the whole package with your other important papers, because together these documents form your contract.
If you have a question about your protection, call our customer service team at <Insurer Phone> and have your client number <Client ID> at hand so that we can find your file quickly."""),
        ("intro_reading_guide", "introductory", 1, """How to read your contract

The declarations page lists the insured, the described automobile, the contract period and the protections you selected, together with the premium charged for each one.
The policy form then explains what is covered, what is excluded and what you must do when a loss happens, and it applies to every contract issued in the province.
Any endorsement that follows the policy form adds, removes or changes a protection, and where an endorsement and the policy form disagree the endorsement prevails for the matter it deals with.
Words printed in the declarations have the same meaning throughout the contract, and a reference to the insured includes the person named in the declarations and any spouse living with that person."""),
        ("intro_privacy", "introductory", 1, """Protection of your personal information

We collect the personal information needed to assess the risk, to issue and renew this contract and to settle any claim that you present to us.
We keep this information in a confidential file that only authorized employees and service providers can consult, and we do not sell it to anyone.
You may ask to consult your file or to correct information that is inaccurate by writing to us, and we will answer your request within thirty days after we receive it."""),
        ("decl_insured", "declaration", 1, """DECLARATIONS

Item 1. NAMED INSURED
Name: <Insured Name>
Address: <Insured Address>
Date of birth: <Insured Birth Date>
Sex: <Insured Sex>
Client number: <Client ID>
Association rebate: <Association Rebate>

The named insured declares that during the last six years the number of claims under an automobile contract was <Claims Count>* and the number of licence suspensions was <Suspensions Count>* as recorded in the information supplied with the application."""),
        ("decl_period", "declaration", 1, """Item 2. CONTRACT PERIOD
FROM: <Contract Start Date>* TO: <Contract End Date>* EXCLUSIVELY
at 12:01 a.m. standard time at the address of the named insured, unless the contract is cancelled before that date in accordance with its conditions."""),
        ("decl_vehicle", "declaration", 1, """Item 3. DESCRIBED AUTOMOBILE
Year: <Vehicle Year>
Make: <Vehicle Maker>
Model: <Vehicle Model>
Motor type: <Motor Type>
Condition at purchase: <Purchase Condition>
Creditor or lessor: <Financing Institution>

The named insured declares that the described automobile is used mainly for pleasure and for travel to work, and that it is not rented to others or used to carry passengers for payment."""),
        ("decl_coverage", "declaration", 1, """Item 4. COVERAGE AND PREMIUM
Insurance is provided only for the protections for which a premium is shown below, and the amount of insurance for each protection is stated beside it.

<Coverage Summary>

Premium by protection:
<Premium Details>

Total premium for the contract period: <Total Premium>

Endorsements forming part of this contract:
<Endorsement List>"""),
        ("qpf_section_a", "qpf", 1, """SECTION A. CIVIL LIABILITY

The insurer undertakes to pay on behalf of the insured all sums that the insured may be legally bound to pay as compensation for bodily injury or property damage caused by the automobile, up to <Liability Limit> per occurrence.
This protection also covers the reasonable costs of defending the insured in any lawsuit brought against that person, and those costs are paid in addition to the amount of insurance shown in the declarations.
The insurer will not pay for damage to property owned by the insured, carried in the automobile or held in the care of the insured, except where a specific endorsement provides otherwise."""),
        ("qpf_section_b", "qpf", 2, """SECTION B. DAMAGE TO THE INSURED AUTOMOBILE

The insurer agrees to pay for the direct and accidental loss of or damage to the described automobile and its usual equipment, subject to the deductible shown in the declarations for the protection that applies.
The amount paid cannot exceed the actual cash value of the automobile at the time of the loss, and the insurer may choose to repair the automobile, to replace it with one of like kind and quality or to pay the amount of the loss.
No payment is made for wear and tear, for mechanical breakdown or for damage that results only from freezing, unless the breakdown follows a loss that is otherwise covered under this section."""),
        ("qpf_conditions", "qpf", 1, """GENERAL CONDITIONS

The insured must inform the insurer promptly of any change in the facts declared in the application, in particular a change of address, of driver or of the main use of the automobile.
When a loss happens, the insured must take every reasonable step to protect the automobile from further damage and must give written notice to the insurer as soon as possible.
Either party may cancel this contract by sending written notice, and the unearned part of the premium is then refunded according to the rules set out in this form."""),
    ],
    "fr": [
        ("intro_cover", "introductory", 1, """<Insurer Name>
Contrat d'assurance automobile

Numéro de contrat : <Contract Number>
Préparé pour : <Insured Name>

Nous vous remercions de nous avoir choisis pour protéger votre véhicule et les personnes qui y prennent place. Cette pochette contient vos conditions particulières, le texte du formulaire de police et chacun des avenants qui le modifient selon votre situation.
Veuillez lire attentivement chaque page et conserver l'ensemble avec vos autres documents importants, car ces documents forment ensemble votre contrat.
Si vous avez une question sur votre protection, appelez notre service à la clientèle au <Insurer Phone> et ayez en main votre numéro de client <Client ID> afin que nous puissions trouver rapidement votre dossier."""),
        ("intro_reading_guide", "introductory", 1, """Comment lire votre contrat

Les conditions particulières indiquent l'assuré, le véhicule désigné, la période du contrat et les garanties que vous avez choisies, ainsi que la prime demandée pour chacune d'elles.
Le formulaire de police explique ensuite ce qui est couvert, ce qui est exclu et ce que vous devez faire lors d'un sinistre, et il s'applique à tous les contrats émis dans la province.
Tout avenant qui suit le formulaire ajoute, retire ou modifie une garantie, et lorsqu'un avenant contredit le formulaire, l'avenant l'emporte pour la question qu'il vise.
Les termes inscrits aux conditions particulières ont le même sens dans tout le contrat, et la mention de l'assuré comprend la personne désignée et son conjoint qui habite avec elle."""),
        ("intro_privacy", "introductory", 1, """Protection de vos renseignements personnels

Nous recueillons les renseignements personnels nécessaires pour évaluer le risque, pour établir et renouveler ce contrat et pour régler toute réclamation que vous nous présentez.
Nous conservons ces renseignements dans un dossier confidentiel que seuls les employés et les fournisseurs autorisés peuvent consulter, et nous ne les vendons à personne.
Vous pouvez demander de consulter votre dossier ou de faire corriger un renseignement inexact en nous écrivant, et nous répondrons à votre demande dans les trente jours suivant sa réception."""),
        ("decl_insured", "declaration", 1, """CONDITIONS PARTICULIÈRES

Article 1. ASSURÉ DÉSIGNÉ
Nom : <Insured Name>
Adresse : <Insured Address>
Date de naissance : <Insured Birth Date>
Sexe : <Insured Sex>
Numéro de client : <Client ID>
Rabais d'association : <Association Rebate>

L'assuré désigné déclare qu'au cours des six dernières années le nombre de sinistres en vertu d'un contrat d'assurance automobile a été de <Claims Count>* et que le nombre de suspensions de permis a été de <Suspensions Count>* selon les renseignements fournis avec la proposition."""),
        ("decl_period", "declaration", 1, """Article 2. PÉRIODE DU CONTRAT
DU : <Contract Start Date>* AU : <Contract End Date>* EXCLUSIVEMENT
à 0 h 01, heure normale, à l'adresse de l'assuré désigné, sauf si le contrat est résilié avant cette date conformément à ses conditions."""),
        ("decl_vehicle", "declaration", 1, """Article 3. VÉHICULE DÉSIGNÉ
Année : <Vehicle Year>
Marque : <Vehicle Maker>
Modèle : <Vehicle Model>
Type de moteur : <Motor Type>
État à l'achat : <Purchase Condition>
Créancier ou locateur : <Financing Institution>

L'assuré désigné déclare que le véhicule désigné sert principalement à l'agrément et aux déplacements vers le travail, et qu'il n'est ni loué à autrui ni utilisé pour transporter des passagers contre rémunération."""),
        ("decl_coverage", "declaration", 1, """Article 4. GARANTIES ET PRIME
L'assurance ne s'applique qu'aux garanties pour lesquelles une prime est indiquée ci-dessous, et le montant d'assurance de chaque garantie est inscrit à côté de celle-ci.

<Coverage Summary>

Prime par garantie :
<Premium Details>

Prime totale pour la période du contrat : <Total Premium>

Avenants faisant partie du présent contrat :
<Endorsement List>"""),
        ("qpf_section_a", "qpf", 1, """CHAPITRE A. RESPONSABILITÉ CIVILE

L'assureur s'engage à payer pour l'assuré toutes les sommes que celui-ci peut être légalement tenu de verser en réparation des dommages corporels ou matériels causés par le véhicule, jusqu'à concurrence de <Liability Limit> par sinistre.
Cette garantie couvre aussi les frais raisonnables de défense de l'assuré dans toute poursuite intentée contre lui, et ces frais sont payés en plus du montant d'assurance indiqué aux conditions particulières.
L'assureur ne paie pas les dommages aux biens qui appartiennent à l'assuré, qui sont transportés dans le véhicule ou qui sont sous sa garde, sauf si un avenant particulier le prévoit."""),
        ("qpf_section_b", "qpf", 2, """CHAPITRE B. DOMMAGES AU VÉHICULE ASSURÉ

L'assureur s'engage à payer les pertes ou les dommages directs et accidentels subis par le véhicule désigné et son équipement habituel, sous réserve de la franchise indiquée aux conditions particulières pour la garantie qui s'applique.
Le montant payé ne peut dépasser la valeur au jour du sinistre, et l'assureur peut choisir de réparer le véhicule, de le remplacer par un véhicule de même nature et qualité ou de payer le montant de la perte.
Aucune indemnité n'est versée pour l'usure, pour le bris mécanique ou pour les dommages causés uniquement par le gel, à moins que le bris ne résulte d'un sinistre par ailleurs couvert en vertu du présent chapitre."""),
        ("qpf_conditions", "qpf", 1, """CONDITIONS GÉNÉRALES

L'assuré doit informer promptement l'assureur de tout changement aux faits déclarés dans la proposition, notamment un changement d'adresse, de conducteur ou d'usage principal du véhicule.
Lors d'un sinistre, l'assuré doit prendre toutes les mesures raisonnables pour protéger le véhicule contre des dommages supplémentaires et doit en aviser l'assureur par écrit dès que possible.
Chaque partie peut résilier le présent contrat en envoyant un avis écrit, et la portion non acquise de la prime est alors remboursée selon les règles prévues au présent formulaire."""),
    ],
}

# (id, en title, fr title, en clause, fr clause)
ENDORSEMENTS = [
    ("2", "Named driver restriction", "Restriction aux conducteurs désignés",
     "The automobile may be driven only by the persons named in the declarations, and no protection applies while any other person drives it.",
     "Le véhicule ne peut être conduit que par les personnes désignées aux conditions particulières, et aucune garantie ne s'applique lorsqu'une autre personne le conduit."),
    ("3", "Commercial use of the automobile", "Utilisation commerciale du véhicule",
     "The automobile may also be used for the business of the insured, provided that it is not used to deliver goods for a fee.",
     "Le véhicule peut aussi servir aux affaires de l'assuré, pourvu qu'il ne serve pas à livrer des marchandises contre rémunération."),
    ("4", "Coverage of towed trailers", "Garantie des remorques tractées",
     "Damage to a trailer that is attached to the automobile is covered on the same terms as damage to the automobile itself.",
     "Les dommages subis par une remorque attelée au véhicule sont couverts aux mêmes conditions que les dommages au véhicule lui-même."),
    ("5", "Agreed value of the automobile", "Valeur convenue du véhicule",
     "In case of total loss the insurer pays the value agreed upon when the contract was issued instead of the actual cash value.",
     "En cas de perte totale, l'assureur paie la valeur convenue lors de l'émission du contrat plutôt que la valeur au jour du sinistre."),
    ("8", "Deductible waiver for glass breakage", "Renonciation à la franchise pour le bris de vitres",
     "No deductible applies when the only damage is the breakage of a windshield or a window that is repaired rather than replaced.",
     "Aucune franchise ne s'applique lorsque le seul dommage est le bris d'un pare-brise ou d'une glace qui est réparé plutôt que remplacé."),
    ("9", "Long-term leased automobile", "Véhicule loué à long terme",
     "The lessor named in the declarations is added as an insured for its interest in the automobile during the lease.",
     "Le locateur désigné aux conditions particulières est ajouté comme assuré pour son intérêt dans le véhicule pendant la durée de la location."),
    ("13c", "Transportation of hazardous materials", "Transport de matières dangereuses",
     "The protection is extended to losses that occur while the automobile carries small quantities of hazardous materials for lawful purposes.",
     "La garantie est étendue aux sinistres survenant pendant que le véhicule transporte de petites quantités de matières dangereuses à des fins légitimes."),
    ("16", "Audio and electronic equipment", "Équipement audio et électronique",
     "Audio, navigation and communication equipment that is permanently installed in the automobile is covered up to the amount shown.",
     "L'équipement audio, de navigation et de communication installé en permanence dans le véhicule est couvert jusqu'au montant indiqué."),
    ("19", "Limitation of the amount of indemnity", "Limitation du montant de l'indemnité",
     "The amount paid for any loss to the automobile cannot exceed the amount stated in this endorsement, whatever its actual cash value.",
     "Le montant payé pour un sinistre au véhicule ne peut dépasser le montant inscrit au présent avenant, quelle que soit sa valeur au jour du sinistre."),
    ("20", "Travel expenses following a loss", "Frais de déplacement à la suite d'un sinistre",
     "The insurer pays the reasonable cost of renting a replacement vehicle or using public transportation while the automobile is being repaired.",
     "L'assureur paie le coût raisonnable de la location d'un véhicule de remplacement ou du transport en commun pendant la réparation du véhicule."),
    ("20a", "Rental automobile while travelling", "Véhicule de location en voyage",
     "The protections of the contract also apply to a private passenger automobile that the insured rents for a period of less than thirty days.",
     "Les garanties du contrat s'appliquent aussi à un véhicule de promenade que l'assuré loue pour une période de moins de trente jours."),
    ("25", "Change of automobile", "Changement de véhicule",
     "The protections are transferred to the automobile described in this endorsement from the date written below, and the former automobile is no longer insured.",
     "Les garanties sont transférées au véhicule décrit au présent avenant à compter de la date indiquée, et l'ancien véhicule n'est plus assuré."),
    ("27", "Civil liability for automobiles not owned by the insured", "Responsabilité civile pour les véhicules dont l'assuré n'est pas propriétaire",
     "The insurer covers damage caused to an automobile that the insured borrows or rents, provided that it is not used regularly by that person.",
     "L'assureur couvre les dommages causés à un véhicule que l'assuré emprunte ou loue, pourvu que celui-ci ne l'utilise pas de façon régulière."),
    ("28", "Exclusion of named persons", "Exclusion de personnes désignées",
     "No protection applies while the automobile is driven by a person that this endorsement names as excluded.",
     "Aucune garantie ne s'applique lorsque le véhicule est conduit par une personne que le présent avenant désigne comme exclue."),
    ("30", "Exclusion of damage for named drivers", "Exclusion des dommages pour des conducteurs désignés",
     "Damage to the automobile is not covered while it is driven by a named driver, although the civil liability protection continues to apply.",
     "Les dommages au véhicule ne sont pas couverts lorsqu'il est conduit par un conducteur désigné, mais la garantie de responsabilité civile demeure en vigueur."),
    ("31", "Restricted use of the automobile", "Usage restreint du véhicule",
     "The automobile may be used only on the dates or for the purposes stated in this endorsement, and every other use is excluded.",
     "Le véhicule ne peut être utilisé qu'aux dates ou aux fins prévues au présent avenant, et tout autre usage est exclu."),
    ("33", "Replacement cost of accessories", "Coût de remplacement des accessoires",
     "Accessories added after purchase are paid at their replacement cost, provided that the insured shows proof of their installation.",
     "Les accessoires ajoutés après l'achat sont payés selon leur coût de remplacement, pourvu que l'assuré prouve leur installation."),
    ("34", "Accident benefits supplement", "Supplément d'indemnités en cas d'accident",
     "The insurer pays additional benefits to an insured who is injured in an accident involving the automobile, in addition to the public plan.",
     "L'assureur verse des indemnités supplémentaires à l'assuré blessé dans un accident impliquant le véhicule, en plus du régime public."),
    ("37", "Deductible applicable to theft", "Franchise applicable au vol",
     "A separate deductible applies to the theft of the entire automobile, and it replaces the deductible shown for the protection that applies.",
     "Une franchise distincte s'applique au vol du véhicule entier, et elle remplace la franchise indiquée pour la garantie qui s'applique."),
    ("38", "Seasonal storage", "Remisage saisonnier",
     "While the automobile is stored for the season, only the protections against fire, theft and vandalism remain in force.",
     "Pendant le remisage saisonnier du véhicule, seules les garanties contre l'incendie, le vol et le vandalisme demeurent en vigueur."),
    ("40", "Loss of resale value", "Perte de valeur de revente",
     "The insurer pays the reduction in resale value that results from major repairs to an automobile that is less than three years old.",
     "L'assureur paie la diminution de la valeur de revente qui résulte de réparations majeures à un véhicule de moins de trois ans."),
    ("41", "Waiver of deductible for specified risks", "Renonciation à la franchise pour certains risques",
     "No deductible applies to a loss caused by a collision with another insured vehicle whose owner is identified.",
     "Aucune franchise ne s'applique à un sinistre causé par une collision avec un autre véhicule assuré dont le propriétaire est identifié."),
    ("43", "Replacement value without depreciation", "Valeur à neuf sans dépréciation",
     "In case of total loss during the period shown, the insurer pays the cost of a new automobile of the same make and model without deducting depreciation.",
     "En cas de perte totale pendant la période indiquée, l'assureur paie le coût d'un véhicule neuf de même marque et modèle sans déduire la dépréciation."),
    ("44", "Family protection", "Protection de la famille",
     "The insurer compensates the insured and the members of the family for injuries caused by a driver who is not insured or who cannot be identified.",
     "L'assureur indemnise l'assuré et les membres de sa famille pour les blessures causées par un conducteur non assuré ou non identifié."),
    ("47", "Legal defence costs", "Frais de défense juridique",
     "The insurer pays the lawyer fees of the insured for a prosecution under the road safety laws, up to the amount shown.",
     "L'assureur paie les honoraires d'avocat de l'assuré pour une poursuite en vertu des lois sur la sécurité routière, jusqu'au montant indiqué."),
    ("48a", "Additional insured (lessor)", "Assuré additionnel (locateur)",
     "The lessor is added as an insured for the civil liability protection, but only for claims that arise from the use of the automobile.",
     "Le locateur est ajouté comme assuré pour la garantie de responsabilité civile, mais seulement pour les réclamations qui découlent de l'usage du véhicule."),
]

ENDORSEMENT_BODY = {
    "en": """Q.E.F. {id} - {title}

This endorsement forms part of contract <Contract Number> issued to <Insured Name> and applies to the described automobile, a <Vehicle Year> <Vehicle Maker> <Vehicle Model>, while the contract is in force.
{clause}
This endorsement takes effect on <Contract Start Date>* and ends no later than the expiry of the contract on <Contract End Date>* unless it is cancelled sooner.
All other terms, conditions and exclusions of the contract remain unchanged and continue to apply to the protections described in the declarations.""",
    "fr": """F.A.Q. {id} - {title}

Le présent avenant fait partie du contrat <Contract Number> émis au nom de <Insured Name> et s'applique au véhicule désigné, soit un véhicule <Vehicle Maker> <Vehicle Model> de l'année <Vehicle Year>, pendant que le contrat est en vigueur.
{clause}
Le présent avenant prend effet le <Contract Start Date>* et prend fin au plus tard à l'expiration du contrat le <Contract End Date>* à moins d'être résilié plus tôt.
Toutes les autres clauses, conditions et exclusions du contrat demeurent inchangées et continuent de s'appliquer aux garanties décrites aux conditions particulières.""",
}


def main() -> None:
    for lang in ("en", "fr"):
        out = ROOT / lang
        out.mkdir(parents=True, exist_ok=True)
        entries = []
        for tid, part, repeat, body in BASE[lang]:
            name = f"{tid}.txt"
            (out / name).write_text(body + "\n", encoding="utf-8")
            entry = {"id": tid, "file": name, "part": part}
            if repeat != 1:
                entry["repeat"] = repeat
            entries.append(entry)
        for eid, title_en, title_fr, clause_en, clause_fr in ENDORSEMENTS:
            title, clause = (title_en, clause_en) if lang == "en" else (title_fr, clause_fr)
            name = f"qef_{eid}.txt"
            (out / name).write_text(ENDORSEMENT_BODY[lang].format(id=eid, title=title, clause=clause) + "\n", encoding="utf-8")
            entries.append({"id": f"qef_{eid}", "file": name, "part": "endorsement", "endorsement_id": eid})
        manifest = {
            "language": lang,
            "counts": {"base": len(BASE[lang]), "endorsement": len(ENDORSEMENTS)},
            "templates": entries,
        }
        (out / "manifest.json").write_text(json.dumps(manifest, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
