export { SchemaError } from "./errors";
export { parseCsv, requireColumns, column, Table } from "./csv";
export { encodePng, decodePngRaw, PNG_SIGNATURE } from "./png";
export { Canvas } from "./raster";
export { renderFig1, renderFig1Table, FIG1_COLUMNS } from "./fig1";
export { renderFig3, renderFig3Table, FIG3_COLUMNS } from "./fig3";
export { renderFile, FigureKind } from "./render";
