import { makeClient } from './api'
import { BoardStore } from './store'
import { renderBoard, renderPresetPicker } from './render'

export interface AppHandle {
  store: BoardStore
  root: HTMLElement
}

/** Mount the playground into a DOM element.  `baseUrl` is the session
 *  service; all board state flows from its responses. */
export async function mountApp(root: HTMLElement, baseUrl: string): Promise<AppHandle> {
  const client = makeClient(baseUrl)
  const store = new BoardStore(client)
  const presets = await client.presets()
  root.textContent = ''
  renderPresetPicker(root, presets, store)
  store.subscribe(() => renderBoard(root, store))
  renderBoard(root, store)
  return { store, root }
}

declare global {
  interface Window {
    NUMBERSGAME_BASE_URL?: string
  }
}

if (typeof document !== 'undefined' && document.getElementById('app')) {
  const base = window.NUMBERSGAME_BASE_URL ?? 'http://127.0.0.1:8000'
  void mountApp(document.getElementById('app')!, base)
}
