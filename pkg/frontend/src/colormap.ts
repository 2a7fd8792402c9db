/** Cyclic colormaps (hour-of-day and day-of-week hue wheels) plus a
 * categorical palette for periods, clusters, and vertex categories. */

export type ColormapKind = "hour-of-day" | "day-of-week" | "period";

export const DAY_NAMES = ["Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun"];

/** Perceptually even hue steps around the wheel; fraction in [0, 1). */
export function cyclicColor(fraction: number): string {
  const hue = ((fraction % 1) + 1) % 1 * 360;
  return `hsl(${hue.toFixed(1)}, 70%, 45%)`;
}

export function hourOfDayColor(hour: number): string {
  return cyclicColor(hour / 24);
}

export function dayOfWeekColor(day: number): string {
  return cyclicColor(day / 7);
}

const CATEGORICAL = [
  "#4269d0", "#efb118", "#ff725c", "#6cc5b0", "#3ca951",
  "#ff8ab7", "#a463f2", "#97bbf5", "#9c6b4e", "#9498a0",
];

export function categoricalColor(index: number): string {
  return CATEGORICAL[((index % CATEGORICAL.length) + CATEGORICAL.length) % CATEGORICAL.length];
}

export interface LegendEntry {
  label: string;
  color: string;
}

export function legendFor(kind: ColormapKind, periodCount: number): LegendEntry[] {
  if (kind === "day-of-week") {
    return DAY_NAMES.map((label, i) => ({ label, color: dayOfWeekColor(i) }));
  }
  if (kind === "hour-of-day") {
    return [0, 3, 6, 9, 12, 15, 18, 21].map((h) => ({
      label: `${h}:00`,
      color: hourOfDayColor(h),
    }));
  }
  return Array.from({ length: periodCount }, (_, i) => ({
    label: `period ${i}`,
    color: categoricalColor(i),
  }));
}
