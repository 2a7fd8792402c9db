/** Timeline geometry: instance marks at (time, first MDS coordinate),
 * period polylines, and cluster-grouped rows. Pure data in, pure marks out;
 * the SVG painter consumes the marks unchanged. */

import {
  categoricalColor,
  dayOfWeekColor,
  hourOfDayColor,
  legendFor,
  LegendEntry,
} from "./colormap.js";
import { ViewState } from "./state.js";
import { InstanceData } from "./types.js";

export interface PointMark {
  instanceId: number;
  x: number;
  y: number;
  color: string;
  selected: boolean;
  tooltip: string;
  /** cluster row the mark belongs to (cluster mode only) */
  row: number | null;
}

export interface PolylineMark {
  period: number;
  color: string;
  points: { x: number; y: number }[];
}

export interface TimelineMarks {
  points: PointMark[];
  polylines: PolylineMark[];
  legend: LegendEntry[];
  rowCount: number;
  xDomain: [number, number];
  yDomain: [number, number];
}

function markColor(state: ViewState, inst: InstanceData): string {
  switch (state.colormap) {
    case "hour-of-day":
      return hourOfDayColor(inst.colormap.hour_of_day);
    case "day-of-week":
      return dayOfWeekColor(inst.colormap.day_of_week);
    case "period":
      return categoricalColor(Math.floor(inst.id / state.periodLength));
  }
}

function tooltip(state: ViewState, inst: InstanceData): string {
  const cluster = state.clusters.get(inst.id);
  const parts = [
    `instance ${inst.id}`,
    `t = ${inst.midpoint}`,
    `mds[0] = ${inst.mds[0].toPrecision(4)}`,
    `${inst.vertices.length} vertices, ${inst.edges.length} edges`,
    `period ${Math.floor(inst.id / state.periodLength)}`,
  ];
  if (cluster !== null && cluster !== undefined) parts.push(`cluster ${cluster}`);
  const note = state.annotations.get(inst.id);
  if (note) parts.push(note);
  return parts.join("\n");
}

export function computeTimelineMarks(state: ViewState, splitPeriods: boolean): TimelineMarks {
  const bundle = state.bundle;
  if (!bundle || bundle.instances.length === 0) {
    return {
      points: [],
      polylines: [],
      legend: [],
      rowCount: 1,
      xDomain: [0, 1],
      yDomain: [-1, 1],
    };
  }
  const instances = bundle.instances;
  const times = instances.map((i) => i.midpoint);
  const ys = instances.map((i) => i.mds[0]);

  const clusterIds = new Set<number>();
  if (state.clusterMode) {
    for (const inst of instances) {
      const c = state.clusters.get(inst.id);
      if (c !== null && c !== undefined) clusterIds.add(c);
    }
  }
  const rows = [...clusterIds].sort((a, b) => a - b);

  const points: PointMark[] = instances.map((inst) => {
    const cluster = state.clusters.get(inst.id);
    const row =
      state.clusterMode && cluster !== null && cluster !== undefined
        ? rows.indexOf(cluster)
        : null;
    return {
      instanceId: inst.id,
      x: inst.midpoint,
      y: inst.mds[0],
      color: markColor(state, inst),
      selected: state.selected.includes(inst.id),
      tooltip: tooltip(state, inst),
      row,
    };
  });

  const polylines: PolylineMark[] = [];
  if (splitPeriods) {
    for (let start = 0; start < instances.length; start += state.periodLength) {
      const chunk = instances.slice(start, start + state.periodLength);
      if (chunk.length < state.periodLength) break; // partial tail gets no overlay
      const period = Math.floor(start / state.periodLength);
      polylines.push({
        period,
        color: categoricalColor(period),
        // periods overlay each other: x is the offset within the period
        points: chunk.map((inst, i) => ({ x: i, y: inst.mds[0] })),
      });
    }
  }

  const periodCount = Math.ceil(instances.length / state.periodLength);
  return {
    points,
    polylines,
    legend: legendFor(state.colormap, periodCount),
    rowCount: state.clusterMode ? Math.max(rows.length, 1) : 1,
    xDomain: [Math.min(...times), Math.max(...times)],
    yDomain: [Math.min(...ys), Math.max(...ys)],
  };
}
