import { layoutGraph } from './layout'
import { BoardStore } from './store'
import type { Preset } from './types'

const SVG = 'http://www.w3.org/2000/svg'

/** Short display: integers bare, everything else to 4 decimals; the
 *  full-precision value rides in the title attribute. */
export function formatValue(x: number): string {
  if (Number.isInteger(x)) return String(x)
  return x.toFixed(4)
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  cls?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag)
  if (cls) node.className = cls
  if (text !== undefined) node.textContent = text
  return node
}

function svgEl(tag: string, attrs: Record<string, string | number>): SVGElement {
  const node = document.createElementNS(SVG, tag) as SVGElement
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, String(v))
  return node
}

export function renderPresetPicker(
  root: HTMLElement,
  presets: Preset[],
  store: BoardStore,
): void {
  const bar = el('div', 'preset-bar')
  const select = el('select', 'preset-select')
  select.setAttribute('data-role', 'preset-select')
  for (const preset of presets) {
    const option = el('option', undefined, `${preset.name} (${preset.family ?? 'wild'})`)
    option.value = preset.id
    select.appendChild(option)
  }
  const button = el('button', 'preset-load', 'Load')
  button.setAttribute('data-role', 'preset-load')
  button.addEventListener('click', () => {
    void store.loadPreset(select.value)
  })
  bar.append(select, button)
  root.appendChild(bar)
}

export function renderBoard(root: HTMLElement, store: BoardStore): void {
  let board = root.querySelector<HTMLElement>('.board')
  if (!board) {
    board = el('div', 'board')
    root.appendChild(board)
  }
  board.textContent = ''
  const view = store.view
  if (!view) {
    board.appendChild(el('p', 'empty', 'Load a preset to start playing.'))
    return
  }

  const banner = el('div', 'banner', view.status)
  banner.setAttribute('data-status', view.status)
  if (view.analysis.terminal_prediction !== null && view.status === 'Active') {
    banner.textContent = `${view.status} - ${view.analysis.terminal_prediction} moves to go`
  }
  board.appendChild(banner)

  board.appendChild(renderGraph(store))
  board.appendChild(renderHistory(store))

  const toast = el('div', 'toast', store.toast ?? '')
  if (!store.toast) toast.style.display = 'none'
  board.appendChild(toast)
}

function renderGraph(store: BoardStore): SVGElement {
  const view = store.view!
  const points = layoutGraph(view.graph)
  const svg = svgEl('svg', { viewBox: '0 0 640 360', class: 'graph' })

  for (const edge of view.graph.edges) {
    const a = points[edge.i - 1]
    const b = points[edge.j - 1]
    svg.appendChild(
      svgEl('line', { x1: a.x, y1: a.y, x2: b.x, y2: b.y, class: 'edge' }),
    )
    const label = svgEl('text', {
      x: (a.x + b.x) / 2,
      y: (a.y + b.y) / 2 - 8,
      class: 'edge-label',
      'text-anchor': 'middle',
    })
    label.textContent = `p ${formatValue(edge.p)} / q ${formatValue(edge.q)} / m ${edge.m}`
    svg.appendChild(label)
  }

  view.current.forEach((value, idx) => {
    const node = idx + 1
    const point = points[idx]
    const fireable = view.fireable.includes(node)
    const group = svgEl('g', {
      class: `node${fireable ? ' fireable' : ''}`,
      'data-node': node,
    })
    group.appendChild(
      svgEl('circle', { cx: point.x, cy: point.y, r: 26, class: 'node-circle' }),
    )
    const text = svgEl('text', {
      x: point.x,
      y: point.y + 5,
      class: 'value',
      'text-anchor': 'middle',
    })
    text.textContent = formatValue(value)
    const title = document.createElementNS(SVG, 'title')
    title.textContent = String(value)
    group.appendChild(title)
    group.appendChild(text)

    const name = svgEl('text', {
      x: point.x,
      y: point.y - 34,
      class: 'node-name',
      'text-anchor': 'middle',
    })
    name.textContent = String(node)
    group.appendChild(name)

    if (store.ghost) {
      const ghostValue = store.ghost.position[idx]
      const ghost = svgEl('text', {
        x: point.x + 30,
        y: point.y - 16,
        class: 'ghost',
        'text-anchor': 'start',
      })
      ghost.textContent = formatValue(ghostValue)
      group.appendChild(ghost)
    }

    group.addEventListener('click', () => {
      if (fireable) void store.fire(node)
    })
    group.addEventListener('mouseenter', () => {
      void store.hover(node)
    })
    group.addEventListener('mouseleave', () => {
      store.unhover()
    })
    svg.appendChild(group)
  })
  return svg
}

function renderHistory(store: BoardStore): HTMLElement {
  const view = store.view!
  const strip = el('div', 'history')
  const start = el('button', 'chip start', 'start')
  start.setAttribute('data-index', '0')
  start.addEventListener('click', () => void store.scrub(0))
  if (view.history.length === 0) start.classList.add('current')
  strip.appendChild(start)

  store.fullLog.forEach((node, k) => {
    const played = k < view.history.length
    const value = store.fullValues[k]
    const chip = el(
      'button',
      `chip${played ? '' : ' future'}`,
      `${k + 1}. node ${node}${value !== undefined ? ` (${formatValue(value)})` : ''}`,
    )
    chip.setAttribute('data-index', String(k + 1))
    chip.setAttribute('data-fired-node', String(node))
    if (k + 1 === view.history.length) chip.classList.add('current')
    chip.addEventListener('click', () => void store.scrub(k + 1))
    strip.appendChild(chip)
  })

  const undo = el('button', 'chip undo', 'undo')
  undo.setAttribute('data-role', 'undo')
  undo.addEventListener('click', () => void store.undoOne())
  strip.appendChild(undo)
  return strip
}
