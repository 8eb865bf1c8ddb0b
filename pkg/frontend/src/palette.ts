// Fixed edit-category palette shared by the anomaly view and its legend.

export const CATEGORY_COLORS: Record<string, string> = {
  StructuralViolation: "#e5484d",
  ImmediateChanged: "#f5a524",
  MemoryRefChanged: "#f5a524",
  LabelRenameConsistent: "#3b82f6",
  LabelRenameInconsistent: "#3b82f6",
  RegisterRenamed: "#3b82f6",
  GroupReorder: "#8b5cf6",
  IntraGroupReorder: "#e5484d",
};

export const SERIES_COLORS = [
  "#2563eb", "#dc2626", "#16a34a", "#9333ea",
  "#ea580c", "#0891b2", "#ca8a04", "#db2777",
];

export function categoryColor(category: string): string {
  return CATEGORY_COLORS[category] ?? "#94a3b8";
}
