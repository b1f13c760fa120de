/** The nine sound categories, in the order they are collected.
 *
 * The `id` values are the service's wire identifiers and must match it
 * exactly — they appear in upload URLs and in `sources_used` on results.
 * Instruction text is shared within a pair (deep/shallow, heavy/shallow,
 * fast/normal) and across the three vowels.
 */

export type CategoryId =
  | "breathing-deep"
  | "breathing-shallow"
  | "cough-heavy"
  | "cough-shallow"
  | "counting-fast"
  | "counting-normal"
  | "vowel-a"
  | "vowel-e"
  | "vowel-o";

export interface CategoryInfo {
  readonly id: CategoryId;
  readonly label: string;
  readonly instruction: string;
}

const BREATHING = "Few respiration cycles in deep and shallow manner";
const COUGH = "Few cycles of coughing in heavy and shallow manner";
const COUNTING = "speech sound of counting 1 to 20 in fast and normal pace";
const VOWELS = "sustained phonation of vowels: [u] in boot, [i] in beet, [æ] in bat";

export const CATEGORIES: readonly CategoryInfo[] = [
  { id: "breathing-deep", label: "Deep breathing", instruction: BREATHING },
  { id: "breathing-shallow", label: "Shallow breathing", instruction: BREATHING },
  { id: "cough-heavy", label: "Heavy cough", instruction: COUGH },
  { id: "cough-shallow", label: "Shallow cough", instruction: COUGH },
  { id: "counting-fast", label: "Fast counting", instruction: COUNTING },
  { id: "counting-normal", label: "Normal-pace counting", instruction: COUNTING },
  { id: "vowel-a", label: "Vowel [æ] (as in bat)", instruction: VOWELS },
  { id: "vowel-e", label: "Vowel [i] (as in beet)", instruction: VOWELS },
  { id: "vowel-o", label: "Vowel [u] (as in boot)", instruction: VOWELS },
];

export const CATEGORY_COUNT = CATEGORIES.length;

export function categoryAt(index: number): CategoryInfo {
  const info = CATEGORIES[index];
  if (info === undefined) {
    throw new RangeError(`category index out of range: ${index}`);
  }
  return info;
}
