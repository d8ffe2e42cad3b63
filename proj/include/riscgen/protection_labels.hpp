#pragma once

#include <map>
#include <optional>
#include <string>

#include "riscgen/language.hpp"
#include "riscgen/protection_table.hpp"

namespace riscgen {

struct LabelPair {
  const char* fr;
  const char* en;
  const char* in(Language lang) const { return lang == Language::Fr ? fr : en; }
};

inline const std::map<std::string, LabelPair, decltype(&endorsement_id_less)>& endorsement_titles() {
  static const std::map<std::string, LabelPair, decltype(&endorsement_id_less)> titles(
      {
          {"2", {"Restriction aux conducteurs désignés", "Named driver restriction"}},
          {"3", {"Utilisation commerciale du véhicule", "Commercial use of the automobile"}},
          {"4", {"Garantie des remorques tractées", "Coverage of towed trailers"}},
          {"5", {"Valeur convenue du véhicule", "Agreed value of the automobile"}},
          {"8", {"Renonciation à la franchise pour le bris de vitres", "Deductible waiver for glass breakage"}},
          {"9", {"Véhicule loué à long terme", "Long-term leased automobile"}},
          {"13c", {"Transport de matières dangereuses", "Transportation of hazardous materials"}},
          {"16", {"Équipement audio et électronique", "Audio and electronic equipment"}},
          {"19", {"Limitation du montant de l'indemnité", "Limitation of the amount of indemnity"}},
          {"20", {"Frais de déplacement à la suite d'un sinistre", "Travel expenses following a loss"}},
          {"20a", {"Véhicule de location en voyage", "Rental automobile while travelling"}},
          {"25", {"Changement de véhicule", "Change of automobile"}},
          {"27", {"Responsabilité civile pour les véhicules dont l'assuré n'est pas propriétaire",
                  "Civil liability for automobiles not owned by the insured"}},
          {"28", {"Exclusion de personnes désignées", "Exclusion of named persons"}},
          {"30", {"Exclusion des dommages pour des conducteurs désignés", "Exclusion of damage for named drivers"}},
          {"31", {"Usage restreint du véhicule", "Restricted use of the automobile"}},
          {"33", {"Coût de remplacement des accessoires", "Replacement cost of accessories"}},
          {"34", {"Supplément d'indemnités en cas d'accident", "Accident benefits supplement"}},
          {"37", {"Franchise applicable au vol", "Deductible applicable to theft"}},
          {"38", {"Remisage saisonnier", "Seasonal storage"}},
          {"40", {"Perte de valeur de revente", "Loss of resale value"}},
          {"41", {"Renonciation à la franchise pour certains risques", "Waiver of deductible for specified risks"}},
          {"43", {"Valeur à neuf sans dépréciation", "Replacement value without depreciation"}},
          {"44", {"Protection de la famille", "Family protection"}},
          {"47", {"Frais de défense juridique", "Legal defence costs"}},
          {"48a", {"Assuré additionnel (locateur)", "Additional insured (lessor)"}},
      },
      &endorsement_id_less);
  return titles;
}

/// "Q.E.F. 20a" / "F.A.Q. 20a", "Section B2" / "Chapitre B2".
inline std::string protection_code(const std::string& column, Language lang) {
  if (column.starts_with(kEndorsementPrefix)) {
    return std::string(lang == Language::Fr ? "F.A.Q. " : "Q.E.F. ") + column.substr(kEndorsementPrefix.size());
  }
  if (column.starts_with("Section")) {
    return std::string(lang == Language::Fr ? "Chapitre " : "Section ") + column.substr(7);
  }
  return column;
}

/// Inverse of protection_code.
inline std::optional<std::string> column_from_code(const std::string& code, Language lang) {
  const std::string qef = lang == Language::Fr ? "F.A.Q. " : "Q.E.F. ";
  const std::string section = lang == Language::Fr ? "Chapitre " : "Section ";
  if (code.starts_with(qef)) return std::string(kEndorsementPrefix) + code.substr(qef.size());
  if (code.starts_with(section)) return "Section" + code.substr(section.size());
  return std::nullopt;
}

inline std::string protection_title(const std::string& column, Language lang) {
  static const std::map<std::string, LabelPair> base = {
      {"SectionA", {"Responsabilité civile", "Civil liability"}},
      {"SectionB1", {"Tous risques", "All perils"}},
      {"SectionB2", {"Collision ou versement", "Collision or upset"}},
      {"SectionB3", {"Accident sans collision ni versement", "Perils other than collision or upset"}},
      {"SectionB4", {"Risques spécifiés", "Specified perils"}},
  };
  if (auto it = base.find(column); it != base.end()) return it->second.in(lang);
  if (column.starts_with(kEndorsementPrefix)) {
    const auto id = column.substr(kEndorsementPrefix.size());
    if (auto it = endorsement_titles().find(id); it != endorsement_titles().end()) return it->second.in(lang);
  }
  return protection_code(column, lang);
}

}  // namespace riscgen
